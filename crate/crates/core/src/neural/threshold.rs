use super::NeuralError;
use crate::datamodel::Class;
use crate::Scalar;

/// Median; the mean of the two middle order statistics for even length.
pub fn median<T: Scalar>(values: &[T]) -> Result<T, NeuralError> {
    if values.is_empty() {
        return Err(NeuralError::EmptyInput);
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let n = v.len();
    Ok(if n % 2 == 1 { v[n / 2] } else { (v[n / 2 - 1] + v[n / 2]) / T::c(2.0) })
}

/// Class 1 iff the output is at or above `threshold`.
pub fn threshold_classify<T: Scalar>(outputs: &[T], threshold: T) -> Vec<Class> {
    outputs
        .iter()
        .map(|&y| if y >= threshold { Class::Performing } else { Class::NonPerforming })
        .collect()
}

/// Median of the outputs as the cutoff, ties assigned class 1.
pub fn median_threshold_classify<T: Scalar>(outputs: &[T]) -> Result<(T, Vec<Class>), NeuralError> {
    let m = median(outputs)?;
    Ok((m, threshold_classify(outputs, m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Class::*;

    #[test]
    fn even_length_median() {
        let (t, c) = median_threshold_classify(&[0.1, 0.9, 0.5, 0.7]).unwrap();
        assert!((t - 0.6f64).abs() < 1e-15);
        assert_eq!(c, vec![NonPerforming, Performing, NonPerforming, Performing]);
    }

    #[test]
    fn all_equal_outputs_are_class_one() {
        let (t, c) = median_threshold_classify(&[0.3f32; 5]).unwrap();
        assert_eq!(t, 0.3);
        assert!(c.iter().all(|&k| k == Performing));
    }

    #[test]
    fn empty() {
        assert_eq!(median_threshold_classify::<f64>(&[]), Err(NeuralError::EmptyInput));
    }
}

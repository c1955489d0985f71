use std::fmt;
use std::str::FromStr;

use super::NeuralError;
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MseConvention {
    /// `(1/n) * sum (d - y)^2`; used for reported numbers.
    #[default]
    Mean,
    /// `0.5 * sum (d - y)^2`; the training objective.
    HalfSum,
}

impl FromStr for MseConvention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mean" => Ok(MseConvention::Mean),
            "half_sum" => Ok(MseConvention::HalfSum),
            other => Err(format!("unknown mse convention `{other}` (expected mean or half_sum)")),
        }
    }
}

impl fmt::Display for MseConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MseConvention::Mean => "mean",
            MseConvention::HalfSum => "half_sum",
        })
    }
}

pub fn mse<T: Scalar>(outputs: &[T], targets: &[T], convention: MseConvention) -> Result<T, NeuralError> {
    if outputs.len() != targets.len() {
        return Err(NeuralError::LengthMismatch(outputs.len(), targets.len()));
    }
    if outputs.is_empty() {
        return Err(NeuralError::EmptyInput);
    }
    let sse: T = outputs.iter().zip(targets).map(|(&y, &d)| (d - y) * (d - y)).sum();
    Ok(match convention {
        MseConvention::Mean => sse / T::from_count(outputs.len()),
        MseConvention::HalfSum => sse * T::c(0.5),
    })
}

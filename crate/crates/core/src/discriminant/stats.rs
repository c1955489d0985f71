use crate::datamodel::Dataset;
use crate::linalg::SquareMatrix;
use crate::Scalar;

use super::DiscriminantError;

/// Per-class means and the within-group / total sums of squares and
/// cross-products over a set of columns.
#[derive(Debug, Clone)]
pub(crate) struct GroupStats<T> {
    pub counts: [usize; 2],
    pub means: [Vec<T>; 2],
    pub grand_mean: Vec<T>,
    pub within: SquareMatrix<T>,
    pub total: SquareMatrix<T>,
}

impl<T: Scalar> GroupStats<T> {
    pub fn compute(dataset: &Dataset<T>, columns: &[usize]) -> Result<Self, DiscriminantError> {
        let p = columns.len();
        let counts = dataset.class_counts();
        if counts[0] == 0 || counts[1] == 0 {
            return Err(DiscriminantError::MissingClass);
        }
        let mut sums = [vec![T::zero(); p], vec![T::zero(); p]];
        for r in dataset.records() {
            let g = r.label.index();
            for (k, &c) in columns.iter().enumerate() {
                sums[g][k] += r.values[c];
            }
        }
        let means = [0, 1].map(|g| {
            let n = T::from_count(counts[g]);
            sums[g].iter().map(|&s| s / n).collect::<Vec<T>>()
        });
        let n_total = T::from_count(counts[0] + counts[1]);
        let grand_mean: Vec<T> = (0..p)
            .map(|k| (sums[0][k] + sums[1][k]) / n_total)
            .collect();

        let mut within = SquareMatrix::zeros(p);
        let mut total = SquareMatrix::zeros(p);
        let mut dw = vec![T::zero(); p];
        let mut dt = vec![T::zero(); p];
        for r in dataset.records() {
            let g = r.label.index();
            for (k, &c) in columns.iter().enumerate() {
                dw[k] = r.values[c] - means[g][k];
                dt[k] = r.values[c] - grand_mean[k];
            }
            for i in 0..p {
                for j in 0..=i {
                    within.add_at(i, j, dw[i] * dw[j]);
                    total.add_at(i, j, dt[i] * dt[j]);
                }
            }
        }
        for i in 0..p {
            for j in 0..i {
                within.set(j, i, within.get(i, j));
                total.set(j, i, total.get(i, j));
            }
        }
        Ok(Self { counts, means, grand_mean, within, total })
    }

    pub fn n(&self) -> usize {
        self.counts[0] + self.counts[1]
    }
}

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::HarnessError;
use crate::datamodel::{Class, Dataset, FirmRecord};
use crate::linalg::{Cholesky, SquareMatrix};
use crate::Scalar;

/// Two Gaussian classes with a shared covariance. `n0` and `n1` firms are
/// drawn independently for every year in `years`.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    pub n0: usize,
    pub n1: usize,
    pub dimension: usize,
    pub mean0: Vec<f64>,
    pub mean1: Vec<f64>,
    pub covariance: Vec<Vec<f64>>,
    pub seed: u64,
    pub years: Vec<i32>,
}

impl SyntheticSpec {
    /// Identity covariance; the class means differ by `separation` standard
    /// deviations along coordinate `planted` only.
    pub fn planted(n0: usize, n1: usize, dimension: usize, planted: usize, separation: f64, seed: u64) -> Self {
        let mut mean1 = vec![0.0; dimension];
        if planted < dimension {
            mean1[planted] = separation;
        }
        let covariance = (0..dimension)
            .map(|i| (0..dimension).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Self { n0, n1, dimension, mean0: vec![0.0; dimension], mean1, covariance, seed, years: vec![2005] }
    }

    pub fn with_years(mut self, years: Vec<i32>) -> Self {
        self.years = years;
        self
    }

    pub fn variable_names(&self) -> Vec<String> {
        (1..=self.dimension).map(|i| format!("R{i:02}")).collect()
    }

    fn validate(&self) -> Result<SquareMatrix<f64>, HarnessError> {
        let bad = |m: &str| Err(HarnessError::InvalidSpec(m.to_string()));
        if self.n0 < 2 || self.n1 < 2 {
            return bad("need at least two records per class");
        }
        if self.dimension == 0 || self.dimension > 99 {
            return bad("dimension must be between 1 and 99");
        }
        if self.mean0.len() != self.dimension || self.mean1.len() != self.dimension {
            return bad("mean length differs from dimension");
        }
        if self.years.is_empty() {
            return bad("no years");
        }
        if self.mean0.iter().chain(&self.mean1).any(|v| !v.is_finite()) {
            return bad("non-finite mean");
        }
        let cov = SquareMatrix::from_rows(&self.covariance).ok_or(HarnessError::NotPositiveDefinite)?;
        if cov.dim() != self.dimension || !cov.is_symmetric(1e-12) {
            return Err(HarnessError::NotPositiveDefinite);
        }
        Ok(cov)
    }
}

/// Deterministic per seed. Within each year, class-1 firms come first.
pub fn generate_synthetic<T: Scalar>(spec: &SyntheticSpec) -> Result<Dataset<T>, HarnessError> {
    let cov = spec.validate()?;
    let chol = Cholesky::factor(&cov).ok_or(HarnessError::NotPositiveDefinite)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut records = Vec::with_capacity(spec.years.len() * (spec.n0 + spec.n1));
    let mut z = vec![0.0; spec.dimension];
    for &year in &spec.years {
        let firms = (0..spec.n1)
            .map(|_| (Class::Performing, &spec.mean1))
            .chain((0..spec.n0).map(|_| (Class::NonPerforming, &spec.mean0)));
        for (i, (label, mean)) in firms.enumerate() {
            for v in z.iter_mut() {
                *v = StandardNormal.sample(&mut rng);
            }
            let values = chol.lower_mul(&z).iter().zip(mean).map(|(&d, &m)| T::c(m + d)).collect();
            records.push(FirmRecord { firm_id: format!("F{:04}", i + 1), year, label, values });
        }
    }
    Dataset::new(spec.variable_names(), records).map_err(|e| HarnessError::InvalidSpec(e.to_string()))
}

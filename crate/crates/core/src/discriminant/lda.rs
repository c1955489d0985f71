use std::str::FromStr;

use super::stats::GroupStats;
use super::DiscriminantError;
use crate::datamodel::{Class, Dataset};
use crate::linalg::Cholesky;
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Priors {
    /// Class priors proportional to group sizes.
    #[default]
    Proportional,
    Equal,
}

impl FromStr for Priors {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "proportional" => Ok(Priors::Proportional),
            "equal" => Ok(Priors::Equal),
            other => Err(format!("unknown priors `{other}` (expected proportional or equal)")),
        }
    }
}

/// Linear score `Z = alpha + sum(beta_i * x_i)` with a decision cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct LdaModel<T> {
    pub variables: Vec<String>,
    pub alpha: T,
    pub beta: Vec<T>,
    /// Mean score of class 0 and class 1. Absent for models loaded from
    /// reference coefficients only.
    pub centroids: Option<[T; 2]>,
    pub priors: [T; 2],
    pub cutoff: T,
}

impl<T: Scalar> LdaModel<T> {
    /// Model from coefficients alone: equal priors, cutoff zero.
    pub fn from_coefficients(variables: Vec<String>, alpha: T, beta: Vec<T>) -> Result<Self, DiscriminantError> {
        if variables.len() != beta.len() {
            return Err(DiscriminantError::DimensionMismatch { expected: variables.len(), found: beta.len() });
        }
        let half = T::c(0.5);
        Ok(Self { variables, alpha, beta, centroids: None, priors: [half, half], cutoff: T::zero() })
    }

    pub fn score(&self, x: &[T]) -> Result<T, DiscriminantError> {
        if x.len() != self.beta.len() {
            return Err(DiscriminantError::DimensionMismatch { expected: self.beta.len(), found: x.len() });
        }
        Ok(self.alpha + self.beta.iter().zip(x).map(|(&b, &v)| b * v).sum::<T>())
    }

    /// Class 1 iff the score is at or above the cutoff.
    pub fn classify(&self, x: &[T]) -> Result<Class, DiscriminantError> {
        Ok(if self.score(x)? >= self.cutoff { Class::Performing } else { Class::NonPerforming })
    }

    /// Same direction and centroids with new priors; only the cutoff moves.
    pub fn with_priors(&self, priors: [T; 2]) -> Self {
        let mut m = self.clone();
        m.priors = priors;
        if let Some([c0, c1]) = self.centroids {
            m.cutoff = bayes_cutoff(c0, c1, priors);
        }
        m
    }
}

fn bayes_cutoff<T: Scalar>(c0: T, c1: T, priors: [T; 2]) -> T {
    (c0 + c1) / T::c(2.0) - (priors[1] / priors[0]).ln() / (c1 - c0)
}

/// Two-group canonical discriminant. The direction is `W^-1 (mu1 - mu0)`
/// with `W` the pooled within-group covariance, scaled so the score has unit
/// pooled within-group variance; `alpha` centers the grand mean score at zero
/// and the sign puts class 1 above class 0.
pub fn fit_lda<T: Scalar, S: AsRef<str>>(
    dataset: &Dataset<T>,
    variables: &[S],
    priors: Priors,
) -> Result<LdaModel<T>, DiscriminantError> {
    let cols = dataset.indices_of(variables)?;
    let stats = GroupStats::compute(dataset, &cols)?;
    let n = stats.n();
    if n <= 2 {
        return Err(DiscriminantError::TooFewObservations);
    }
    let pooled = stats.within.scaled(T::one() / T::from_count(n - 2));
    let chol = Cholesky::factor(&pooled).ok_or(DiscriminantError::SingularWithinCovariance)?;
    let diff: Vec<T> = stats.means[1].iter().zip(&stats.means[0]).map(|(&a, &b)| a - b).collect();
    let direction = chol.solve(&diff);
    // squared Mahalanobis distance between the group means
    let d2 = pooled.quad_form(&direction);
    if !(d2 > T::epsilon()) {
        return Err(DiscriminantError::NoSeparation);
    }
    let scale = T::one() / d2.sqrt();
    let beta: Vec<T> = direction.iter().map(|&d| d * scale).collect();
    let alpha = -beta.iter().zip(&stats.grand_mean).map(|(&b, &m)| b * m).sum::<T>();
    let centroid = |g: usize| alpha + beta.iter().zip(&stats.means[g]).map(|(&b, &m)| b * m).sum::<T>();
    let (c0, c1) = (centroid(0), centroid(1));

    let priors = match priors {
        Priors::Equal => [T::c(0.5), T::c(0.5)],
        Priors::Proportional => {
            let nt = T::from_count(n);
            [T::from_count(stats.counts[0]) / nt, T::from_count(stats.counts[1]) / nt]
        }
    };
    Ok(LdaModel {
        variables: variables.iter().map(|v| v.as_ref().to_string()).collect(),
        alpha,
        beta,
        centroids: Some([c0, c1]),
        priors,
        cutoff: bayes_cutoff(c0, c1, priors),
    })
}

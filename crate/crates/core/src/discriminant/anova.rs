use statrs::function::beta::beta_reg;

use super::stats::GroupStats;
use super::DiscriminantError;
use crate::datamodel::Dataset;
use crate::Scalar;

/// One-way two-group test of mean equality for a single variable.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupMeanTest<T> {
    pub variable: String,
    /// Wilks' Lambda, `SSW / (SSW + SSB)`.
    pub lambda: T,
    pub f_stat: T,
    pub ddl1: usize,
    pub ddl2: usize,
    pub p_value: T,
}

/// Upper tail `P(F > f)` of the F(d1, d2) distribution, through the
/// regularized incomplete beta function.
pub fn f_upper_tail(f: f64, d1: f64, d2: f64) -> f64 {
    if f.is_nan() || d1 <= 0.0 || d2 <= 0.0 {
        return f64::NAN;
    }
    if f <= 0.0 {
        return 1.0;
    }
    if f.is_infinite() {
        return 0.0;
    }
    beta_reg(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f)).clamp(0.0, 1.0)
}

pub fn group_mean_test<T: Scalar>(
    dataset: &Dataset<T>,
    variable: &str,
) -> Result<GroupMeanTest<T>, DiscriminantError> {
    let col = dataset.index_of(variable)?;
    let stats = GroupStats::compute(dataset, &[col])?;
    let n = stats.n();
    if n <= 2 {
        return Err(DiscriminantError::TooFewObservations);
    }
    let ssw = stats.within.get(0, 0);
    let ssb: T = (0..2)
        .map(|g| {
            let d = stats.means[g][0] - stats.grand_mean[0];
            T::from_count(stats.counts[g]) * d * d
        })
        .sum();
    if ssw <= T::zero() {
        return Err(DiscriminantError::DegenerateVariable(variable.to_string()));
    }
    let ddl1 = 1;
    let ddl2 = n - 2;
    let f_stat = ssb / (ssw / T::from_count(ddl2));
    let lambda = ssw / (ssw + ssb);
    let p_value = T::c(f_upper_tail(f_stat.as_f64(), ddl1 as f64, ddl2 as f64));
    Ok(GroupMeanTest { variable: variable.to_string(), lambda, f_stat, ddl1, ddl2, p_value })
}

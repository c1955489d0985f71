use std::fmt;

use super::stats::GroupStats;
use super::DiscriminantError;
use crate::datamodel::Dataset;
use crate::linalg::{dot, Cholesky, SquareMatrix};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepwiseConfig<T> {
    pub f_enter: T,
    pub f_remove: T,
}

impl<T: Scalar> Default for StepwiseConfig<T> {
    fn default() -> Self {
        Self { f_enter: T::c(3.84), f_remove: T::c(2.71) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepAction {
    Enter,
    Remove,
}

impl fmt::Display for StepAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepAction::Enter => "enter",
            StepAction::Remove => "remove",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord<T> {
    /// 1-based.
    pub step: usize,
    pub action: StepAction,
    pub variable: String,
    /// Wilks' Lambda of the selected set after this action.
    pub wilks_after: T,
    /// Partial F-to-enter or F-to-remove that triggered the action.
    pub f_change: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepwiseTrace<T> {
    pub steps: Vec<StepRecord<T>>,
    /// Final set, in order of entry.
    pub selected: Vec<String>,
}

struct Selector<'a, T> {
    within: &'a SquareMatrix<T>,
    total: &'a SquareMatrix<T>,
    n: usize,
    min_tolerance: T,
}

impl<T: Scalar> Selector<'_, T> {
    /// Residual of `m[x, x]` after regressing on the columns in `given`.
    fn conditional(m: &SquareMatrix<T>, x: usize, given: &[usize]) -> Option<T> {
        if given.is_empty() {
            return Some(m.get(x, x));
        }
        let sub = m.submatrix(given);
        let cross: Vec<T> = given.iter().map(|&g| m.get(g, x)).collect();
        let ch = Cholesky::factor(&sub)?;
        Some(m.get(x, x) - dot(&cross, &ch.solve(&cross)))
    }

    /// Partial Wilks' Lambda of `x` given `given`, or `None` when `x` is
    /// (numerically) a linear combination of `given` within groups.
    fn partial_lambda(&self, x: usize, given: &[usize]) -> Option<T> {
        let w = Self::conditional(self.within, x, given)?;
        let t = Self::conditional(self.total, x, given)?;
        if !(w > self.min_tolerance * self.within.get(x, x)) || !(t > T::zero()) {
            return None;
        }
        Some((w / t).min(T::one()))
    }

    /// Partial F with df `(1, n - 2 - q)` where `q = given.len()`.
    fn partial_f(&self, x: usize, given: &[usize]) -> Option<T> {
        let df2 = self.n.checked_sub(2 + given.len()).filter(|&d| d >= 1)?;
        let lp = self.partial_lambda(x, given)?;
        Some(T::from_count(df2) * (T::one() - lp) / lp)
    }

    fn wilks(&self, set: &[usize]) -> T {
        if set.is_empty() {
            return T::one();
        }
        match (Cholesky::factor(&self.within.submatrix(set)), Cholesky::factor(&self.total.submatrix(set))) {
            (Some(w), Some(t)) => (w.ln_det() - t.ln_det()).exp(),
            _ => T::nan(),
        }
    }
}

/// Forward selection with removal, minimizing Wilks' Lambda. Each round
/// enters the candidate with the largest partial F-to-enter (strictly above
/// `f_enter`), then removes included variables whose partial F-to-remove
/// falls strictly below `f_remove`, smallest first. Ties go to the earlier
/// candidate.
pub fn stepwise_select<T: Scalar, S: AsRef<str>>(
    dataset: &Dataset<T>,
    candidates: &[S],
    config: &StepwiseConfig<T>,
) -> Result<StepwiseTrace<T>, DiscriminantError> {
    let StepwiseConfig { f_enter, f_remove } = *config;
    if f_remove.is_nan() || f_enter.is_nan() || f_remove < T::zero() || f_enter < f_remove {
        return Err(DiscriminantError::InvalidThresholds);
    }
    if candidates.is_empty() {
        return Err(DiscriminantError::EmptyCandidates);
    }
    let names: Vec<String> = candidates.iter().map(|c| c.as_ref().to_string()).collect();
    let cols = dataset.indices_of(&names)?;
    let stats = GroupStats::compute(dataset, &cols)?;
    for (k, name) in names.iter().enumerate() {
        if !(stats.within.get(k, k) > T::zero()) {
            return Err(DiscriminantError::DegenerateVariable(name.clone()));
        }
    }
    let sel = Selector {
        within: &stats.within,
        total: &stats.total,
        n: stats.n(),
        min_tolerance: T::epsilon().sqrt(),
    };

    let p = names.len();
    let max_steps = 4 * p + 8;
    let mut selected: Vec<usize> = Vec::new();
    let mut steps = Vec::new();
    let push = |steps: &mut Vec<StepRecord<T>>, action, k: usize, set: &[usize], f| {
        steps.push(StepRecord {
            step: steps.len() + 1,
            action,
            variable: names[k].clone(),
            wilks_after: sel.wilks(set),
            f_change: f,
        });
    };

    'outer: while steps.len() < max_steps {
        let mut best: Option<(usize, T)> = None;
        for k in (0..p).filter(|k| !selected.contains(k)) {
            if let Some(f) = sel.partial_f(k, &selected) {
                if best.is_none_or(|(_, bf)| f > bf) {
                    best = Some((k, f));
                }
            }
        }
        match best {
            Some((k, f)) if f > f_enter => {
                selected.push(k);
                push(&mut steps, StepAction::Enter, k, &selected, f);
            }
            _ => break,
        }
        loop {
            if steps.len() >= max_steps {
                break 'outer;
            }
            let mut worst: Option<(usize, T)> = None;
            for (pos, &k) in selected.iter().enumerate() {
                let others: Vec<usize> = selected.iter().copied().filter(|&o| o != k).collect();
                let f = sel.partial_f(k, &others).unwrap_or(T::zero());
                if worst.is_none_or(|(_, wf)| f < wf) {
                    worst = Some((pos, f));
                }
            }
            match worst {
                Some((pos, f)) if f < f_remove => {
                    let k = selected.remove(pos);
                    push(&mut steps, StepAction::Remove, k, &selected, f);
                }
                _ => break,
            }
        }
    }

    if selected.is_empty() {
        return Err(DiscriminantError::NoVariableSelected);
    }
    Ok(StepwiseTrace { steps, selected: selected.into_iter().map(|k| names[k].clone()).collect() })
}

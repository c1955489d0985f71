//! Two-group discriminant analysis: univariate mean-equality tests, stepwise
//! variable selection by Wilks' Lambda, canonical discriminant fitting,
//! scoring and classification tables.

mod anova;
mod confusion;
mod lda;
pub mod report;
mod stats;
mod stepwise;

pub use anova::{f_upper_tail, group_mean_test, GroupMeanTest};
pub use confusion::{classification_table, ConfusionTable};
pub use lda::{fit_lda, LdaModel, Priors};
pub use stepwise::{stepwise_select, StepAction, StepRecord, StepwiseConfig, StepwiseTrace};

use thiserror::Error;

use crate::datamodel::DataError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiscriminantError {
    #[error("both classes must be present")]
    MissingClass,
    #[error("variable `{0}` has zero within-group variance")]
    DegenerateVariable(String),
    #[error("no candidate cleared the F-to-enter threshold")]
    NoVariableSelected,
    #[error("pooled within-group covariance is singular")]
    SingularWithinCovariance,
    #[error("group means coincide; no discriminant direction")]
    NoSeparation,
    #[error("expected {expected} values, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid stepwise thresholds: need f_enter >= f_remove >= 0")]
    InvalidThresholds,
    #[error("candidate list is empty")]
    EmptyCandidates,
    #[error("need more observations than groups plus variables")]
    TooFewObservations,
    #[error("model file line {line}: {message}")]
    ModelFormat { line: usize, message: String },
    #[error(transparent)]
    Data(#[from] DataError),
}

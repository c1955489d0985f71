//! Experiment orchestration: synthetic data, the end-to-end pipeline and the
//! discriminant-versus-network comparison report.

mod config;
mod pipeline;
mod synthetic;

pub use config::{DataSource, PipelineConfig};
pub use pipeline::{run_pipeline, write_outputs, ComparisonReport, OUTPUT_FILES};
pub use synthetic::{generate_synthetic, SyntheticSpec};

use std::fmt;

use thiserror::Error;

use crate::datamodel::DataError;
use crate::discriminant::DiscriminantError;
use crate::neural::NeuralError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Data,
    Split,
    Stepwise,
    GroupTests,
    Lda,
    Search,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Data => "data",
            Stage::Split => "split",
            Stage::Stepwise => "stepwise",
            Stage::GroupTests => "group-tests",
            Stage::Lda => "lda",
            Stage::Search => "search",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StageError {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Discriminant(#[from] DiscriminantError),
    #[error(transparent)]
    Neural(#[from] NeuralError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarnessError {
    #[error("covariance is not symmetric positive definite")]
    NotPositiveDefinite,
    #[error("invalid synthetic spec: {0}")]
    InvalidSpec(String),
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("stage `{stage}`: {source}")]
    Stage { stage: Stage, source: StageError },
    #[error("io: {0}")]
    Io(String),
}

impl HarnessError {
    pub(crate) fn at<E: Into<StageError>>(stage: Stage) -> impl FnOnce(E) -> Self {
        move |e| HarnessError::Stage { stage, source: e.into() }
    }
}

impl From<std::io::Error> for HarnessError {
    fn from(e: std::io::Error) -> Self {
        HarnessError::Io(e.to_string())
    }
}

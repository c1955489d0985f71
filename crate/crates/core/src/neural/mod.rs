//! Feedforward perceptron with logistic hidden units and a linear output,
//! full-batch Rprop training, architecture search and median-threshold
//! classification.

pub mod format;
mod loss;
mod network;
mod rprop;
mod search;
mod threshold;

pub use loss::{mse, MseConvention};
pub use network::{init_network, sigmoid, Batch, Gradients, Layer, Network};
pub use rprop::{train_rprop, Rprop, TrainAbort, TrainConfig, TrainHistory};
pub use search::{architecture_search, parameter_count, EvalResult, SearchOptions, SearchReport, ThresholdSource};
pub use threshold::{median, median_threshold_classify, threshold_classify};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NeuralError {
    #[error("invalid architecture {0:?}: need at least two layers, sizes >= 1, one output")]
    InvalidArchitecture(Vec<usize>),
    #[error("expected {expected} values, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("length mismatch: {0} outputs vs {1} targets")]
    LengthMismatch(usize, usize),
    #[error("empty input")]
    EmptyInput,
    #[error("invalid training configuration: {0}")]
    InvalidConfig(String),
    #[error("non-finite error or parameter at epoch {epoch}")]
    NonFinite { epoch: usize },
    #[error("network file line {line}: {message}")]
    Format { line: usize, message: String },
}

//! Credit-risk scoring laboratory: stepwise two-group linear discriminant
//! analysis and Rprop-trained multilayer perceptrons over firm
//! financial-ratio data.
//!
//! Numerical code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! at the crate root pin the common `f64` instantiations.

pub mod datamodel;
pub mod discriminant;
pub mod harness;
pub mod neural;
pub mod cli;

mod linalg;
mod scalar;

pub use scalar::Scalar;

pub type Dataset = datamodel::Dataset<f64>;
pub type FirmRecord = datamodel::FirmRecord<f64>;
pub type FinancialStatement = datamodel::FinancialStatement<f64>;
pub type RatioVector = datamodel::RatioVector<f64>;
pub type GroupMeanTest = discriminant::GroupMeanTest<f64>;
pub type StepwiseTrace = discriminant::StepwiseTrace<f64>;
pub type LdaModel = discriminant::LdaModel<f64>;
pub type Network = neural::Network<f64>;
pub type TrainConfig = neural::TrainConfig<f64>;
pub type TrainHistory = neural::TrainHistory<f64>;
pub type EvalResult = neural::EvalResult<f64>;
pub type ComparisonReport = harness::ComparisonReport<f64>;

pub type Dataset32 = datamodel::Dataset<f32>;
pub type LdaModel32 = discriminant::LdaModel<f32>;
pub type Network32 = neural::Network<f32>;

use rayon::prelude::*;

use super::{init_network, median, mse, threshold_classify, train_rprop, Batch, MseConvention, Network, NeuralError};
use super::{TrainConfig, TrainHistory};
use crate::datamodel::Class;
use crate::Scalar;

/// Which outputs the median threshold is computed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThresholdSource {
    #[default]
    Test,
    Train,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub threshold_on: ThresholdSource,
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { threshold_on: ThresholdSource::Test, parallel: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult<T> {
    pub architecture: Vec<usize>,
    /// Mean convention.
    pub train_mse: T,
    /// Mean convention.
    pub test_mse: T,
    pub threshold: T,
    pub correct_count: usize,
    pub total_count: usize,
    pub classification_rate: f64,
    pub test_outputs: Vec<T>,
    pub test_classes: Vec<Class>,
    pub network: Network<T>,
    pub history: TrainHistory<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport<T> {
    /// One entry per configuration, in input order.
    pub results: Vec<Result<EvalResult<T>, NeuralError>>,
    /// Index of the minimum test MSE; ties go to fewer parameters, then
    /// earlier position.
    pub best: Option<usize>,
}

impl<T: Scalar> SearchReport<T> {
    pub fn best_result(&self) -> Option<&EvalResult<T>> {
        self.best.and_then(|i| self.results[i].as_ref().ok())
    }
}

pub fn parameter_count(architecture: &[usize]) -> usize {
    architecture.windows(2).map(|w| w[0] * w[1] + w[1]).sum()
}

fn evaluate<T: Scalar>(
    index: usize,
    architecture: &[usize],
    train: &Batch<T>,
    test: &Batch<T>,
    config: &TrainConfig<T>,
    threshold_on: ThresholdSource,
) -> Result<EvalResult<T>, NeuralError> {
    if test.is_empty() {
        return Err(NeuralError::EmptyInput);
    }
    let seed = config.seed.wrapping_add(index as u64);
    let init = init_network(architecture, seed)?;
    let (network, history) = train_rprop(&init, train, config)?;
    let train_out = network.predict(&train.inputs)?;
    let test_out = network.predict(&test.inputs)?;
    let threshold = match threshold_on {
        ThresholdSource::Test => median(&test_out)?,
        ThresholdSource::Train => median(&train_out)?,
    };
    let classes = threshold_classify(&test_out, threshold);
    let correct = classes
        .iter()
        .zip(&test.targets)
        .filter(|(c, &d)| (**c == Class::Performing) == (d >= T::c(0.5)))
        .count();
    Ok(EvalResult {
        architecture: architecture.to_vec(),
        train_mse: mse(&train_out, &train.targets, MseConvention::Mean)?,
        test_mse: mse(&test_out, &test.targets, MseConvention::Mean)?,
        threshold,
        correct_count: correct,
        total_count: test.len(),
        classification_rate: correct as f64 / test.len() as f64,
        test_outputs: test_out,
        test_classes: classes,
        network,
        history,
    })
}

/// Trains one network per architecture (seed `config.seed + index`) and
/// evaluates it. A failing configuration is recorded, not fatal.
pub fn architecture_search<T: Scalar>(
    train: &Batch<T>,
    test: &Batch<T>,
    space: &[Vec<usize>],
    config: &TrainConfig<T>,
    options: SearchOptions,
) -> Result<SearchReport<T>, NeuralError> {
    if space.is_empty() {
        return Err(NeuralError::EmptyInput);
    }
    let input_dim = train.inputs.first().map(Vec::len).ok_or(NeuralError::EmptyInput)?;
    for arch in space {
        if arch.first() != Some(&input_dim) || arch.last() != Some(&1) {
            return Err(NeuralError::InvalidArchitecture(arch.clone()));
        }
    }
    let run = |(i, arch): (usize, &Vec<usize>)| evaluate(i, arch, train, test, config, options.threshold_on);
    let results: Vec<_> = if options.parallel {
        space.par_iter().enumerate().map(run).collect()
    } else {
        space.iter().enumerate().map(run).collect()
    };
    let best = results
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.as_ref().ok().map(|e| (i, e)))
        .min_by(|(ia, a), (ib, b)| {
            a.test_mse
                .partial_cmp(&b.test_mse)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(parameter_count(&a.architecture).cmp(&parameter_count(&b.architecture)))
                .then(ia.cmp(ib))
        })
        .map(|(i, _)| i);
    Ok(SearchReport { results, best })
}

use std::fmt;

use super::{Batch, Network, NeuralError};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig<T> {
    pub epochs: usize,
    pub eta_plus: T,
    pub eta_minus: T,
    pub delta_init: T,
    pub delta_max: T,
    pub delta_min: T,
    /// Seed for weight initialization.
    pub seed: u64,
}

impl<T: Scalar> Default for TrainConfig<T> {
    fn default() -> Self {
        Self {
            epochs: 500,
            eta_plus: T::c(1.2),
            eta_minus: T::c(0.5),
            delta_init: T::c(0.07),
            delta_max: T::c(50.0),
            delta_min: T::c(1e-6),
            seed: 0,
        }
    }
}

impl<T: Scalar> TrainConfig<T> {
    pub fn validate(&self) -> Result<(), NeuralError> {
        let (zero, one) = (T::zero(), T::one());
        if !(zero < self.eta_minus && self.eta_minus < one && one < self.eta_plus) {
            return Err(NeuralError::InvalidConfig("need 0 < eta_minus < 1 < eta_plus".into()));
        }
        if !(zero < self.delta_min && self.delta_min <= self.delta_init && self.delta_init <= self.delta_max) {
            return Err(NeuralError::InvalidConfig("need 0 < delta_min <= delta_init <= delta_max".into()));
        }
        if !self.eta_plus.is_finite() || !self.delta_max.is_finite() {
            return Err(NeuralError::InvalidConfig("constants must be finite".into()));
        }
        Ok(())
    }
}

fn sign<T: Scalar>(v: T) -> T {
    if v > T::zero() {
        T::one()
    } else if v < T::zero() {
        -T::one()
    } else {
        T::zero()
    }
}

/// Rprop with weight-backtracking over a flat parameter vector.
#[derive(Debug, Clone)]
pub struct Rprop<T> {
    eta_plus: T,
    eta_minus: T,
    delta_max: T,
    delta_min: T,
    step: Vec<T>,
    prev_grad: Vec<T>,
    prev_update: Vec<T>,
}

impl<T: Scalar> Rprop<T> {
    pub fn new(parameters: usize, config: &TrainConfig<T>) -> Self {
        Self {
            eta_plus: config.eta_plus,
            eta_minus: config.eta_minus,
            delta_max: config.delta_max,
            delta_min: config.delta_min,
            step: vec![config.delta_init; parameters],
            prev_grad: vec![T::zero(); parameters],
            prev_update: vec![T::zero(); parameters],
        }
    }

    pub fn step_sizes(&self) -> &[T] {
        &self.step
    }

    /// One update. Same gradient sign: grow the step and move against the
    /// gradient. Sign flip: shrink the step, revert the previous move and
    /// forget the gradient. Otherwise move by the current step (nothing when
    /// the gradient is zero).
    pub fn update(&mut self, params: &mut [T], grad: &[T]) {
        debug_assert_eq!(params.len(), self.step.len());
        debug_assert_eq!(grad.len(), self.step.len());
        for i in 0..params.len() {
            let g = grad[i];
            let agreement = g * self.prev_grad[i];
            if agreement > T::zero() {
                self.step[i] = (self.step[i] * self.eta_plus).min(self.delta_max);
                let dw = -sign(g) * self.step[i];
                params[i] += dw;
                self.prev_update[i] = dw;
                self.prev_grad[i] = g;
            } else if agreement < T::zero() {
                self.step[i] = (self.step[i] * self.eta_minus).max(self.delta_min);
                params[i] -= self.prev_update[i];
                self.prev_update[i] = T::zero();
                self.prev_grad[i] = T::zero();
            } else {
                let dw = -sign(g) * self.step[i];
                params[i] += dw;
                self.prev_update[i] = dw;
                self.prev_grad[i] = g;
            }
        }
    }
}

/// Per-epoch half-sum training error, measured before each update.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrainHistory<T> {
    pub errors: Vec<T>,
    pub best_so_far: Vec<T>,
}

impl<T: Scalar> TrainHistory<T> {
    fn push(&mut self, e: T) {
        let best = self.best_so_far.last().map_or(e, |&b| b.min(e));
        self.errors.push(e);
        self.best_so_far.push(best);
    }

    pub fn len(&self) -> usize {
        self.errors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Training failure with the state reached at the point of failure.
#[derive(Debug, Clone)]
pub struct TrainAbort<T> {
    pub error: NeuralError,
    pub network: Network<T>,
    pub history: TrainHistory<T>,
}

impl<T> fmt::Display for TrainAbort<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "training aborted: {}", self.error)
    }
}

impl<T: fmt::Debug> std::error::Error for TrainAbort<T> {}

impl<T> From<TrainAbort<T>> for NeuralError {
    fn from(a: TrainAbort<T>) -> Self {
        a.error
    }
}

/// Full-batch Rprop for exactly `config.epochs` epochs.
pub fn train_rprop<T: Scalar>(
    network: &Network<T>,
    train: &Batch<T>,
    config: &TrainConfig<T>,
) -> Result<(Network<T>, TrainHistory<T>), TrainAbort<T>> {
    let mut net = network.clone();
    let mut history = TrainHistory::default();
    let abort = |error, network, history| Err(TrainAbort { error, network, history });
    if let Err(e) = config.validate() {
        return abort(e, net, history);
    }
    if train.is_empty() {
        return abort(NeuralError::EmptyInput, net, history);
    }
    let mut params = net.parameters();
    let mut rprop = Rprop::new(params.len(), config);
    for epoch in 0..config.epochs {
        let (error, grads) = match net.error_and_gradient(train) {
            Ok(v) => v,
            Err(e) => return abort(e, net, history),
        };
        let flat = grads.to_flat();
        if !error.is_finite() || flat.iter().any(|g| !g.is_finite()) {
            return abort(NeuralError::NonFinite { epoch }, net, history);
        }
        history.push(error);
        rprop.update(&mut params, &flat);
        if params.iter().any(|p| !p.is_finite()) {
            return abort(NeuralError::NonFinite { epoch }, net, history);
        }
        net.set_parameters(&params).expect("parameter count unchanged");
    }
    Ok((net, history))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::neural::init_network;

    /// Gradient of `0.5 * (w - target)^2`.
    fn run_quadratic(target: f64, epochs: usize) -> (Vec<f64>, Vec<f64>) {
        let cfg = TrainConfig::<f64>::default();
        let mut rp = Rprop::new(1, &cfg);
        let mut w = [0.0];
        let mut ws = Vec::new();
        let mut steps = Vec::new();
        for _ in 0..epochs {
            let g = [w[0] - target];
            rp.update(&mut w, &g);
            ws.push(w[0]);
            steps.push(rp.step_sizes()[0]);
        }
        (ws, steps)
    }

    #[test]
    fn constant_sign_schedule_grows_then_caps() {
        let (_, steps) = run_quadratic(1e6, 40);
        let mut expect = 0.07;
        for (k, &s) in steps.iter().enumerate() {
            if k > 0 {
                expect = f64::min(expect * 1.2, 50.0);
            }
            assert_eq!(s, expect, "epoch {k}");
        }
        assert_eq!(*steps.last().unwrap(), 50.0);
    }

    #[test]
    fn sign_flip_backtracks_and_halves() {
        let (ws, steps) = run_quadratic(0.2, 9);
        let d0 = 0.07;
        let d1 = d0 * 1.2;
        let d2 = d1 * 1.2;
        let d3 = d2 * 0.5;
        let d4 = d3 * 0.5;
        let d5 = d4 * 1.2;
        let d6 = d5 * 0.5;
        let w1 = 0.0 + d0;
        let w2 = w1 + d1;
        let w3 = w2 + d2; // overshoots 0.2
        let expect_w = [w1, w2, w3, w2, w2 + d3, w2, w2 + d4, w2 + d4 + d5, w2 + d4];
        let expect_s = [d0, d1, d2, d3, d3, d4, d4, d5, d6];
        assert_eq!(steps, expect_s);
        for (a, b) in ws.iter().zip(expect_w) {
            assert!((a - b).abs() < 1e-15, "{ws:?}");
        }
    }

    #[test]
    fn zero_gradient_is_a_no_op() {
        let cfg = TrainConfig::<f64>::default();
        let mut rp = Rprop::new(2, &cfg);
        let mut w = [1.0, 2.0];
        rp.update(&mut w, &[0.0, 0.0]);
        assert_eq!(w, [1.0, 2.0]);
    }

    #[test]
    fn zero_epochs_returns_input() {
        let n: Network<f64> = init_network(&[2, 3, 1], 1).unwrap();
        let batch = Batch::new(vec![vec![0.0, 1.0]], vec![1.0]).unwrap();
        let cfg = TrainConfig { epochs: 0, ..TrainConfig::default() };
        let (out, hist) = train_rprop(&n, &batch, &cfg).unwrap();
        assert_eq!(out, n);
        assert!(hist.is_empty());
    }

    #[test]
    fn invalid_config() {
        let n: Network<f64> = init_network(&[1, 1], 1).unwrap();
        let batch = Batch::new(vec![vec![0.0]], vec![1.0]).unwrap();
        let cfg = TrainConfig { eta_plus: 0.9, ..TrainConfig::default() };
        assert!(matches!(train_rprop(&n, &batch, &cfg), Err(TrainAbort { error: NeuralError::InvalidConfig(_), .. })));
    }

    #[test]
    fn non_finite_aborts_with_state() {
        let n: Network<f64> = init_network(&[1, 2, 1], 1).unwrap();
        let batch = Batch::new(vec![vec![f64::MAX]], vec![f64::MAX]).unwrap();
        let err = train_rprop(&n, &batch, &TrainConfig::default()).unwrap_err();
        assert!(matches!(err.error, NeuralError::NonFinite { epoch: 0 }));
        assert_eq!(err.network, n);
    }
}

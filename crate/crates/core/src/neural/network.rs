use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::NeuralError;
use crate::datamodel::Dataset;
use crate::Scalar;

#[inline]
pub fn sigmoid<T: Scalar>(n: T) -> T {
    T::one() / (T::one() + (-n).exp())
}

/// Dense layer; `weights` is row-major `outputs x inputs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Layer<T> {
    pub inputs: usize,
    pub outputs: usize,
    pub weights: Vec<T>,
    pub biases: Vec<T>,
}

impl<T: Scalar> Layer<T> {
    fn zeros(inputs: usize, outputs: usize) -> Self {
        Self { inputs, outputs, weights: vec![T::zero(); inputs * outputs], biases: vec![T::zero(); outputs] }
    }

    #[inline]
    pub fn weight(&self, out: usize, inp: usize) -> T {
        self.weights[out * self.inputs + inp]
    }

    fn affine(&self, x: &[T], out: &mut Vec<T>) {
        out.clear();
        out.extend((0..self.outputs).map(|j| {
            let row = &self.weights[j * self.inputs..(j + 1) * self.inputs];
            self.biases[j] + row.iter().zip(x).map(|(&w, &a)| w * a).sum::<T>()
        }));
    }
}

/// Multilayer perceptron: logistic sigmoid on every hidden layer, identity
/// on the single output unit.
#[derive(Debug, Clone, PartialEq)]
pub struct Network<T> {
    layers: Vec<Layer<T>>,
}

/// Gradient with the same shapes as the network's parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients<T> {
    pub layers: Vec<Layer<T>>,
}

impl<T: Scalar> Gradients<T> {
    pub fn to_flat(&self) -> Vec<T> {
        self.layers.iter().flat_map(|l| l.weights.iter().chain(&l.biases).copied()).collect()
    }
}

/// Full training or evaluation batch.
#[derive(Debug, Clone, PartialEq)]
pub struct Batch<T> {
    pub inputs: Vec<Vec<T>>,
    pub targets: Vec<T>,
}

impl<T: Scalar> Batch<T> {
    pub fn new(inputs: Vec<Vec<T>>, targets: Vec<T>) -> Result<Self, NeuralError> {
        if inputs.len() != targets.len() {
            return Err(NeuralError::LengthMismatch(inputs.len(), targets.len()));
        }
        if let Some(first) = inputs.first() {
            if let Some(bad) = inputs.iter().find(|x| x.len() != first.len()) {
                return Err(NeuralError::DimensionMismatch { expected: first.len(), found: bad.len() });
            }
        }
        Ok(Self { inputs, targets })
    }

    /// Inputs are the record values, targets the class (0 or 1).
    pub fn from_dataset(dataset: &Dataset<T>) -> Self {
        Self { inputs: dataset.inputs(), targets: dataset.targets() }
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }
}

fn validate_architecture(sizes: &[usize]) -> Result<(), NeuralError> {
    if sizes.len() < 2 || sizes.contains(&0) || sizes.last() != Some(&1) {
        return Err(NeuralError::InvalidArchitecture(sizes.to_vec()));
    }
    Ok(())
}

/// Weights uniform in `[-1/sqrt(fan_in), 1/sqrt(fan_in)]` from a ChaCha8
/// stream seeded with `seed`; biases zero.
pub fn init_network<T: Scalar>(layer_sizes: &[usize], seed: u64) -> Result<Network<T>, NeuralError> {
    validate_architecture(layer_sizes)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let layers = layer_sizes
        .windows(2)
        .map(|w| {
            let mut layer = Layer::zeros(w[0], w[1]);
            let bound = 1.0 / (w[0] as f64).sqrt();
            for v in &mut layer.weights {
                *v = T::c(rng.random_range(-bound..=bound));
            }
            layer
        })
        .collect();
    Ok(Network { layers })
}

impl<T: Scalar> Network<T> {
    pub fn from_layers(layers: Vec<Layer<T>>) -> Result<Self, NeuralError> {
        let mut sizes: Vec<usize> = layers.first().map(|l| vec![l.inputs]).unwrap_or_default();
        for (i, l) in layers.iter().enumerate() {
            if l.weights.len() != l.inputs * l.outputs || l.biases.len() != l.outputs || (i > 0 && layers[i - 1].outputs != l.inputs)
            {
                return Err(NeuralError::InvalidArchitecture(sizes));
            }
            sizes.push(l.outputs);
        }
        validate_architecture(&sizes)?;
        Ok(Self { layers })
    }

    pub fn layers(&self) -> &[Layer<T>] {
        &self.layers
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        std::iter::once(self.layers[0].inputs).chain(self.layers.iter().map(|l| l.outputs)).collect()
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].inputs
    }

    pub fn parameter_count(&self) -> usize {
        self.layers.iter().map(|l| l.weights.len() + l.biases.len()).sum()
    }

    /// Flattened parameters: per layer, weights (row-major) then biases.
    pub fn parameters(&self) -> Vec<T> {
        self.layers.iter().flat_map(|l| l.weights.iter().chain(&l.biases).copied()).collect()
    }

    pub fn set_parameters(&mut self, flat: &[T]) -> Result<(), NeuralError> {
        if flat.len() != self.parameter_count() {
            return Err(NeuralError::DimensionMismatch { expected: self.parameter_count(), found: flat.len() });
        }
        let mut it = flat.iter().copied();
        for l in &mut self.layers {
            for v in l.weights.iter_mut().chain(l.biases.iter_mut()) {
                *v = it.next().expect("length checked");
            }
        }
        Ok(())
    }

    fn check_input(&self, x: &[T]) -> Result<(), NeuralError> {
        if x.len() != self.input_dim() {
            return Err(NeuralError::DimensionMismatch { expected: self.input_dim(), found: x.len() });
        }
        Ok(())
    }

    /// Activations of every layer, input first, output last.
    fn activations(&self, x: &[T]) -> Vec<Vec<T>> {
        let last = self.layers.len() - 1;
        let mut acts = Vec::with_capacity(self.layers.len() + 1);
        acts.push(x.to_vec());
        for (i, layer) in self.layers.iter().enumerate() {
            let mut z = Vec::new();
            layer.affine(&acts[i], &mut z);
            if i < last {
                z.iter_mut().for_each(|v| *v = sigmoid(*v));
            }
            acts.push(z);
        }
        acts
    }

    pub fn forward(&self, x: &[T]) -> Result<T, NeuralError> {
        self.check_input(x)?;
        let last = self.layers.len() - 1;
        let mut a = x.to_vec();
        let mut z = Vec::new();
        for (i, layer) in self.layers.iter().enumerate() {
            layer.affine(&a, &mut z);
            if i < last {
                z.iter_mut().for_each(|v| *v = sigmoid(*v));
            }
            std::mem::swap(&mut a, &mut z);
        }
        Ok(a[0])
    }

    pub fn predict(&self, inputs: &[Vec<T>]) -> Result<Vec<T>, NeuralError> {
        inputs.iter().map(|x| self.forward(x)).collect()
    }

    /// Half-sum error `0.5 * sum (y - d)^2` over the batch and its exact
    /// gradient by reverse accumulation.
    pub fn error_and_gradient(&self, batch: &Batch<T>) -> Result<(T, Gradients<T>), NeuralError> {
        if batch.is_empty() {
            return Err(NeuralError::EmptyInput);
        }
        let mut grads = Gradients { layers: self.layers.iter().map(|l| Layer::zeros(l.inputs, l.outputs)).collect() };
        let half = T::c(0.5);
        let mut error = T::zero();
        for (x, &d) in batch.inputs.iter().zip(&batch.targets) {
            self.check_input(x)?;
            let acts = self.activations(x);
            let y = acts[acts.len() - 1][0];
            error += half * (y - d) * (y - d);
            let mut delta = vec![y - d];
            for li in (0..self.layers.len()).rev() {
                let layer = &self.layers[li];
                let a_prev = &acts[li];
                let g = &mut grads.layers[li];
                for (j, &dj) in delta.iter().enumerate() {
                    g.biases[j] += dj;
                    let row = &mut g.weights[j * layer.inputs..(j + 1) * layer.inputs];
                    for (gw, &a) in row.iter_mut().zip(a_prev) {
                        *gw += dj * a;
                    }
                }
                if li > 0 {
                    delta = (0..layer.inputs)
                        .map(|i| {
                            let back: T = delta.iter().enumerate().map(|(j, &dj)| layer.weight(j, i) * dj).sum();
                            back * a_prev[i] * (T::one() - a_prev[i])
                        })
                        .collect();
                }
            }
        }
        Ok((error, grads))
    }

    pub fn gradient(&self, batch: &Batch<T>) -> Result<Gradients<T>, NeuralError> {
        self.error_and_gradient(batch).map(|(_, g)| g)
    }
}

#![allow(dead_code)]

use credit_lab::datamodel::{Class, Dataset, FirmRecord};
use credit_lab::neural::{Batch, Network};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("R{i:02}")).collect()
}

/// Gaussian classes with random means, `n0`/`n1` records, one year.
pub fn random_dataset(dim: usize, n0: usize, n1: usize, seed: u64) -> Dataset<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: Vec<f64> = (0..dim).map(|_| rng.random_range(-2.0..2.0)).collect();
    let scale: Vec<f64> = (0..dim).map(|_| rng.random_range(0.5..3.0)).collect();
    let mut records = Vec::new();
    for (k, (n, label)) in [(n0, Class::NonPerforming), (n1, Class::Performing)].into_iter().enumerate() {
        for i in 0..n {
            let values = (0..dim)
                .map(|j| {
                    let z: f64 = rng.sample(StandardNormal);
                    z * scale[j] + if k == 1 { shift[j] } else { 0.0 }
                })
                .collect();
            records.push(FirmRecord { firm_id: format!("C{k}-{i}"), year: 2005, label, values });
        }
    }
    Dataset::new(names(dim), records).unwrap()
}

pub fn random_batch(inputs: usize, n: usize, rng: &mut ChaCha8Rng) -> Batch<f64> {
    let x = (0..n).map(|_| (0..inputs).map(|_| rng.random_range(-2.0..2.0)).collect()).collect();
    let y = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
    Batch::new(x, y).unwrap()
}

/// Largest elementwise relative gap between backprop and central
/// differences of the half-sum error.
pub fn gradient_gap(net: &Network<f64>, batch: &Batch<f64>, h: f64) -> f64 {
    let analytic = net.gradient(batch).unwrap().to_flat();
    let base = net.parameters();
    let mut probe = net.clone();
    let mut worst = 0.0f64;
    for i in 0..base.len() {
        let mut p = base.clone();
        p[i] = base[i] + h;
        probe.set_parameters(&p).unwrap();
        let up = probe.error_and_gradient(batch).unwrap().0;
        p[i] = base[i] - h;
        probe.set_parameters(&p).unwrap();
        let down = probe.error_and_gradient(batch).unwrap().0;
        let numeric = (up - down) / (2.0 * h);
        let denom = analytic[i].abs().max(numeric.abs()).max(1e-7);
        worst = worst.max((analytic[i] - numeric).abs() / denom);
    }
    worst
}

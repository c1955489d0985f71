//! Network parameter files and the Table 5 / Table 6 report layouts.
//!
//! Parameter file:
//!
//! ```text
//! mlp-network v1
//! layers 2 4 1
//! layer 1 weights 4 2
//! <4 rows of 2 values>
//! layer 1 biases 4
//! <4 values>
//! ...
//! ```
//!
//! Values are written in scientific notation with 17 significant digits.

use std::fmt::Write as _;

use super::{parameter_count, EvalResult, Layer, Network, NeuralError, SearchReport};
use crate::datamodel::Class;
use crate::Scalar;

const MAGIC: &str = "mlp-network v1";

fn num<T: Scalar>(v: T) -> String {
    format!("{:.16e}", v.as_f64())
}

pub fn write_network<T: Scalar>(network: &Network<T>) -> String {
    let mut s = format!("{MAGIC}\n");
    let sizes: Vec<String> = network.layer_sizes().iter().map(|n| n.to_string()).collect();
    let _ = writeln!(s, "layers {}", sizes.join(" "));
    for (k, l) in network.layers().iter().enumerate() {
        let _ = writeln!(s, "layer {} weights {} {}", k + 1, l.outputs, l.inputs);
        for row in l.weights.chunks(l.inputs) {
            let _ = writeln!(s, "{}", row.iter().map(|&v| num(v)).collect::<Vec<_>>().join(" "));
        }
        let _ = writeln!(s, "layer {} biases {}", k + 1, l.outputs);
        let _ = writeln!(s, "{}", l.biases.iter().map(|&v| num(v)).collect::<Vec<_>>().join(" "));
    }
    s
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    line: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Result<&'a str, NeuralError> {
        for (i, l) in self.inner.by_ref() {
            self.line = i + 1;
            let t = l.trim();
            if !t.is_empty() && !t.starts_with('#') {
                return Ok(t);
            }
        }
        Err(self.err("unexpected end of file"))
    }

    fn err(&self, message: &str) -> NeuralError {
        NeuralError::Format { line: self.line, message: message.to_string() }
    }

    fn values<T: Scalar>(&mut self, expected: usize) -> Result<Vec<T>, NeuralError> {
        let line = self.next()?;
        let v: Vec<T> = line
            .split_whitespace()
            .map(|t| t.parse::<f64>().map(T::c).map_err(|_| self.err("bad number")))
            .collect::<Result<_, _>>()?;
        if v.len() != expected {
            return Err(self.err(&format!("expected {expected} values, found {}", v.len())));
        }
        Ok(v)
    }
}

pub fn read_network<T: Scalar>(text: &str) -> Result<Network<T>, NeuralError> {
    let mut lines = Lines { inner: text.lines().enumerate(), line: 0 };
    if lines.next()? != MAGIC {
        return Err(lines.err("missing `mlp-network v1` header"));
    }
    let header = lines.next()?;
    let sizes: Vec<usize> = header
        .strip_prefix("layers ")
        .ok_or_else(|| lines.err("expected `layers ...`"))?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| lines.err("bad layer size")))
        .collect::<Result<_, _>>()?;
    let mut layers = Vec::new();
    for (k, w) in sizes.windows(2).enumerate() {
        let (inputs, outputs) = (w[0], w[1]);
        if lines.next()? != format!("layer {} weights {} {}", k + 1, outputs, inputs) {
            return Err(lines.err("unexpected weight block header"));
        }
        let mut weights = Vec::with_capacity(inputs * outputs);
        for _ in 0..outputs {
            weights.extend(lines.values::<T>(inputs)?);
        }
        if lines.next()? != format!("layer {} biases {}", k + 1, outputs) {
            return Err(lines.err("unexpected bias block header"));
        }
        let biases = lines.values::<T>(outputs)?;
        layers.push(Layer { inputs, outputs, weights, biases });
    }
    Network::from_layers(layers)
}

pub fn architecture_label(arch: &[usize]) -> String {
    format!("[{}]", arch.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" "))
}

pub fn table5_csv<T: Scalar>(report: &SearchReport<T>, space: &[Vec<usize>]) -> String {
    let mut s = String::from(
        "name,architecture,total_layers,hidden_layers,parameters,train_mse,test_mse,threshold,classification_rate,best,status\n",
    );
    for (i, (arch, r)) in space.iter().zip(&report.results).enumerate() {
        let best = u8::from(report.best == Some(i));
        let head = format!(
            "net_{},{},{},{},{}",
            i + 1,
            architecture_label(arch),
            arch.len(),
            arch.len().saturating_sub(2),
            parameter_count(arch)
        );
        match r {
            Ok(e) => {
                let _ = writeln!(
                    s,
                    "{head},{:.6},{:.6},{},{:.4},{best},ok",
                    e.train_mse.as_f64(),
                    e.test_mse.as_f64(),
                    e.threshold,
                    100.0 * e.classification_rate
                );
            }
            Err(err) => {
                let _ = writeln!(s, "{head},,,,,{best},\"{}\"", err.to_string().replace('"', "'"));
            }
        }
    }
    s
}

pub fn table5_text<T: Scalar>(report: &SearchReport<T>, space: &[Vec<usize>]) -> String {
    let mut s = format!("{:<8}{:<20}{:>7}{:>8}{:>12}{:>12}\n", "", "architecture", "layers", "hidden", "train MSE", "test MSE");
    for (i, (arch, r)) in space.iter().zip(&report.results).enumerate() {
        let name = format!("net_{}{}", i + 1, if report.best == Some(i) { "*" } else { "" });
        let (tr, te) = match r {
            Ok(e) => (format!("{:.4}", e.train_mse.as_f64()), format!("{:.5}", e.test_mse.as_f64())),
            Err(_) => ("failed".into(), "failed".into()),
        };
        let _ = writeln!(s, "{name:<8}{:<20}{:>7}{:>8}{tr:>12}{te:>12}", architecture_label(arch), arch.len(), arch.len().saturating_sub(2));
    }
    s
}

/// Per-firm layout: index (1-based), desired class, network output,
/// assigned class.
pub fn table6_csv<T: Scalar>(desired: &[Class], outputs: &[T], assigned: &[Class]) -> String {
    let mut s = String::from("index,desired,real,assigned\n");
    for (i, ((d, y), a)) in desired.iter().zip(outputs).zip(assigned).enumerate() {
        let _ = writeln!(s, "{},{d},{y},{a}", i + 1);
    }
    s
}

pub fn table6_text<T: Scalar>(result: &EvalResult<T>, desired: &[Class]) -> String {
    let mut s = format!("threshold (median) = {:.3}\n", result.threshold.as_f64());
    let _ = writeln!(s, "{:>6}{:>10}{:>10}{:>10}", "index", "desired", "real", "assigned");
    for (i, ((d, y), a)) in desired.iter().zip(&result.test_outputs).zip(&result.test_classes).enumerate() {
        let mark = if d == a { "" } else { "  *" };
        let _ = writeln!(s, "{:>6}{:>10}{:>10.3}{:>10}{mark}", i + 1, d, y.as_f64(), a);
    }
    let _ = writeln!(
        s,
        "{} of {} correctly classified ({:.2}%)",
        result.correct_count,
        result.total_count,
        100.0 * result.classification_rate
    );
    s
}

//! `key = value` pipeline configuration with `[data]`, `[split]`,
//! `[stepwise]`, `[lda]`, `[nn]` and `[search]` sections.
//!
//! ```text
//! [data]
//! path = firms.csv            # relative to the config file
//! # or: synthetic = true, n0, n1, dimension, planted, separation, seed, years
//! [split]
//! base_years = 2005, 2006
//! test_year = 2007
//! [stepwise]
//! candidates = R01, R02, R03  # default: every dataset variable
//! f_enter = 3.84
//! f_remove = 2.71
//! [lda]
//! priors = proportional       # or equal
//! [nn]
//! epochs = 500
//! seed = 0
//! eta_plus = 1.2
//! eta_minus = 0.5
//! delta_init = 0.07
//! delta_max = 50
//! delta_min = 1e-6
//! threshold = test            # or train
//! [search]
//! hidden = 1; 3; 4; 6 8       # hidden layer sizes per architecture
//! parallel = true
//! ```

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::{HarnessError, SyntheticSpec};
use crate::discriminant::Priors;
use crate::neural::{ThresholdSource, TrainConfig};

#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    Csv(PathBuf),
    Synthetic(SyntheticSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub data: DataSource,
    pub base_years: BTreeSet<i32>,
    pub test_year: i32,
    pub candidates: Option<Vec<String>>,
    pub f_enter: f64,
    pub f_remove: f64,
    pub priors: Priors,
    pub train: TrainConfig<f64>,
    pub threshold_on: ThresholdSource,
    /// Hidden layer sizes; input and output layers are added from the
    /// selected variables.
    pub hidden: Vec<Vec<usize>>,
    pub parallel: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            data: DataSource::Csv(PathBuf::from("data.csv")),
            base_years: [2005, 2006].into(),
            test_year: 2007,
            candidates: None,
            f_enter: 3.84,
            f_remove: 2.71,
            priors: Priors::Proportional,
            train: TrainConfig::default(),
            threshold_on: ThresholdSource::Test,
            hidden: vec![
                vec![1],
                vec![3],
                vec![4],
                vec![6],
                vec![7],
                vec![4, 6],
                vec![6, 8],
                vec![2, 4, 5],
                vec![5, 6, 7],
                vec![2, 3, 4, 3],
                vec![3, 4, 4, 4],
                vec![1, 2, 3, 4, 1],
            ],
            parallel: true,
        }
    }
}

impl PipelineConfig {
    /// Full architectures for an input dimension.
    pub fn architectures(&self, input_dim: usize) -> Vec<Vec<usize>> {
        self.hidden
            .iter()
            .map(|h| std::iter::once(input_dim).chain(h.iter().copied()).chain(std::iter::once(1)).collect())
            .collect()
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, path.parent().unwrap_or_else(|| Path::new(".")))
    }

    pub fn parse(text: &str, base_dir: &Path) -> Result<Self, HarnessError> {
        let mut cfg = Self::default();
        let mut section = String::new();
        let mut path: Option<PathBuf> = None;
        let mut synthetic = false;
        let mut syn = Synth::default();
        let mut seen_data_line = 0;

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |message: String| HarnessError::Config { line: line_no, message };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                section = name.trim().to_string();
                if !["data", "split", "stepwise", "lda", "nn", "search"].contains(&section.as_str()) {
                    return Err(err(format!("unknown section [{section}]")));
                }
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| err("expected `key = value`".into()))?;
            let (key, value) = (key.trim(), value.trim());
            let num = |v: &str| parse::<f64>(v).map_err(err);
            let int = |v: &str| parse::<u64>(v).map_err(err);
            let unknown = || Err(HarnessError::Config { line: line_no, message: format!("unknown key `{key}` in [{section}]") });
            match section.as_str() {
                "data" => {
                    seen_data_line = line_no;
                    match key {
                        "path" => path = Some(base_dir.join(value)),
                        "synthetic" => synthetic = parse::<bool>(value).map_err(err)?,
                        "n0" => syn.n0 = int(value)? as usize,
                        "n1" => syn.n1 = int(value)? as usize,
                        "dimension" => syn.dimension = int(value)? as usize,
                        "planted" => syn.planted = int(value)? as usize,
                        "separation" => syn.separation = num(value)?,
                        "seed" => syn.seed = int(value)?,
                        "years" => syn.years = Some(list::<i32>(value).map_err(err)?),
                        _ => return unknown(),
                    }
                }
                "split" => match key {
                    "base_years" => cfg.base_years = list::<i32>(value).map_err(err)?.into_iter().collect(),
                    "test_year" => cfg.test_year = parse(value).map_err(err)?,
                    _ => return unknown(),
                },
                "stepwise" => match key {
                    "candidates" => cfg.candidates = Some(list::<String>(value).map_err(err)?),
                    "f_enter" => cfg.f_enter = num(value)?,
                    "f_remove" => cfg.f_remove = num(value)?,
                    _ => return unknown(),
                },
                "lda" => match key {
                    "priors" => cfg.priors = value.parse().map_err(err)?,
                    _ => return unknown(),
                },
                "nn" => match key {
                    "epochs" => cfg.train.epochs = int(value)? as usize,
                    "seed" => cfg.train.seed = int(value)?,
                    "eta_plus" => cfg.train.eta_plus = num(value)?,
                    "eta_minus" => cfg.train.eta_minus = num(value)?,
                    "delta_init" => cfg.train.delta_init = num(value)?,
                    "delta_max" => cfg.train.delta_max = num(value)?,
                    "delta_min" => cfg.train.delta_min = num(value)?,
                    "threshold" => {
                        cfg.threshold_on = match value {
                            "test" => ThresholdSource::Test,
                            "train" => ThresholdSource::Train,
                            other => return Err(err(format!("threshold must be test or train, got `{other}`"))),
                        }
                    }
                    _ => return unknown(),
                },
                "search" => match key {
                    "hidden" => {
                        cfg.hidden = value
                            .split(';')
                            .map(|arch| arch.split_whitespace().map(parse::<usize>).collect::<Result<Vec<_>, _>>())
                            .collect::<Result<_, _>>()
                            .map_err(err)?;
                        if cfg.hidden.is_empty() || cfg.hidden.iter().any(|h| h.contains(&0)) {
                            return Err(err("hidden layer sizes must be >= 1".into()));
                        }
                    }
                    "parallel" => cfg.parallel = parse::<bool>(value).map_err(err)?,
                    _ => return unknown(),
                },
                _ => return Err(err("key outside of any section".into())),
            }
        }

        cfg.data = match (synthetic, path) {
            (true, None) => DataSource::Synthetic(syn.into_spec()),
            (false, Some(p)) => DataSource::Csv(p),
            (true, Some(_)) => {
                return Err(HarnessError::Config { line: seen_data_line, message: "`path` and `synthetic` are exclusive".into() })
            }
            (false, None) => {
                return Err(HarnessError::Config { line: seen_data_line, message: "[data] needs `path` or `synthetic = true`".into() })
            }
        };
        Ok(cfg)
    }
}

struct Synth {
    n0: usize,
    n1: usize,
    dimension: usize,
    planted: usize,
    separation: f64,
    seed: u64,
    years: Option<Vec<i32>>,
}

impl Default for Synth {
    fn default() -> Self {
        Self { n0: 26, n1: 60, dimension: 9, planted: 0, separation: 2.0, seed: 0, years: None }
    }
}

impl Synth {
    fn into_spec(self) -> SyntheticSpec {
        SyntheticSpec::planted(self.n0, self.n1, self.dimension, self.planted, self.separation, self.seed)
            .with_years(self.years.unwrap_or_else(|| vec![2005, 2006, 2007]))
    }
}

fn parse<T: FromStr>(v: &str) -> Result<T, String> {
    v.trim().parse().map_err(|_| format!("cannot parse `{}`", v.trim()))
}

fn list<T: FromStr>(v: &str) -> Result<Vec<T>, String> {
    v.split(',').map(parse).collect()
}

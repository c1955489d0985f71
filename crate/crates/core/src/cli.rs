//! `creditlab` command-line front end. Exit codes: 0 success, 1 data or
//! validation error, 2 usage error.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};

use crate::datamodel::{load_dataset, split_by_period, write_dataset, ColumnSchema, Dataset, Loaded};
use crate::discriminant::{
    classification_table, fit_lda, group_mean_test, report as dreport, stepwise_select, Priors, StepwiseConfig,
};
use crate::harness::{generate_synthetic, run_pipeline, write_outputs, DataSource, PipelineConfig, SyntheticSpec};
use crate::neural::{
    architecture_search, format as nformat, init_network, mse, train_rprop, Batch, MseConvention, SearchOptions,
    TrainConfig,
};

#[derive(Debug, Parser)]
#[command(name = "creditlab", about = "Discriminant analysis and neural networks for credit scoring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Load and validate a dataset; print a summary and optionally write the ratio CSV.
    Ingest(DataOut),
    /// Convert a statement CSV into a ratio CSV.
    Ratios(DataOut),
    /// Stepwise selection and group-mean tests.
    Select(SelectArgs),
    /// Fit a discriminant, or score records with a saved model.
    Lda(LdaArgs),
    /// Train one network with Rprop.
    Mlp(MlpArgs),
    /// Architecture search over the split given by a pipeline config.
    Search(SearchArgs),
    /// Full pipeline: split, stepwise, discriminant, network search, report.
    Compare(CompareArgs),
    /// Generate a synthetic two-class dataset.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
struct DataOut {
    #[arg(long)]
    data: PathBuf,
    /// Output CSV file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SelectArgs {
    #[arg(long)]
    data: PathBuf,
    /// Pipeline config; its [split] and [stepwise] sections are used.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    f_enter: Option<f64>,
    #[arg(long)]
    f_remove: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LdaArgs {
    #[arg(long, conflicts_with = "model")]
    data: Option<PathBuf>,
    /// Variables to use, e.g. "R02 R08 R12" (default: all).
    #[arg(long, requires = "data")]
    vars: Option<String>,
    #[arg(long, default_value = "proportional")]
    priors: Priors,
    /// Saved model file.
    #[arg(long, requires = "score")]
    model: Option<PathBuf>,
    /// CSV whose columns include the model variables.
    #[arg(long, requires = "model")]
    score: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MlpArgs {
    #[arg(long)]
    data: PathBuf,
    /// Optional evaluation CSV.
    #[arg(long)]
    test: Option<PathBuf>,
    /// Layer sizes, e.g. "9 6 8 1".
    #[arg(long)]
    arch: String,
    #[arg(long, default_value_t = 500)]
    epochs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "mean")]
    mse: MseConvention,
    /// Print per-epoch training error on stderr.
    #[arg(long)]
    verbose: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    config: PathBuf,
    /// Overrides the config's data source.
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long)]
    epochs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long)]
    priors: Option<Priors>,
    #[arg(long)]
    epochs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[arg(long, default_value_t = 26)]
    n0: usize,
    #[arg(long, default_value_t = 60)]
    n1: usize,
    #[arg(long, default_value_t = 9)]
    dimension: usize,
    /// Zero-based index of the informative coordinate.
    #[arg(long, default_value_t = 0)]
    planted: usize,
    /// Mean difference in standard deviations.
    #[arg(long, default_value_t = 2.0)]
    separation: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "2005,2006,2007", value_delimiter = ',')]
    years: Vec<i32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Data(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Data(e.into())
    }
}

type CliResult = Result<(), Failure>;

/// Runs one invocation; `args` includes the program name.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::*;
            return match e.kind() {
                DisplayHelp | DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };
    let result = match cli.command {
        Command::Ingest(a) => ingest(a, out, err),
        Command::Ratios(a) => ratios(a, out, err),
        Command::Select(a) => select(a, out),
        Command::Lda(a) => lda(a, out),
        Command::Mlp(a) => mlp(a, out, err),
        Command::Search(a) => search(a, out),
        Command::Compare(a) => compare(a, out),
        Command::Synth(a) => synth(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\nFor more information, try '--help'.");
            2
        }
        Err(Failure::Data(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
    }
}

fn read_data(path: &Path, err: &mut dyn Write) -> anyhow::Result<Dataset<f64>> {
    let file = std::fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let Loaded { dataset, skipped } =
        load_dataset(file, &ColumnSchema::default()).with_context(|| format!("reading {}", path.display()))?;
    for s in &skipped {
        let _ = writeln!(err, "warning: row {} ({}) dropped: {}", s.row, s.firm_id, s.error);
    }
    Ok(dataset)
}

fn write_file(path: &Path, body: &str) -> anyhow::Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

fn dataset_csv(ds: &Dataset<f64>) -> anyhow::Result<String> {
    let mut buf = Vec::new();
    write_dataset(ds, &mut buf)?;
    Ok(String::from_utf8(buf)?)
}

fn ingest(a: DataOut, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let ds = read_data(&a.data, err)?;
    let [n0, n1] = ds.class_counts();
    let years: Vec<String> = ds.years().iter().map(|y| y.to_string()).collect();
    let _ = writeln!(out, "records: {}", ds.len());
    let _ = writeln!(out, "class 0: {n0}\nclass 1: {n1}");
    let _ = writeln!(out, "years: {}", years.join(", "));
    let _ = writeln!(out, "variables: {}", ds.variable_names().join(", "));
    if let Some(path) = a.out {
        write_file(&path, &dataset_csv(&ds)?)?;
    }
    Ok(())
}

fn ratios(a: DataOut, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let ds = read_data(&a.data, err)?;
    let csv = dataset_csv(&ds)?;
    match a.out {
        Some(path) => write_file(&path, &csv)?,
        None => {
            let _ = out.write_all(csv.as_bytes());
        }
    }
    Ok(())
}

fn load_config(path: &Path) -> anyhow::Result<PipelineConfig> {
    PipelineConfig::load(path).with_context(|| format!("config {}", path.display()))
}

fn config_dataset(cfg: &PipelineConfig, data: Option<&Path>) -> anyhow::Result<Dataset<f64>> {
    if let Some(p) = data {
        return read_data(p, &mut std::io::stderr());
    }
    match &cfg.data {
        DataSource::Csv(p) => read_data(p, &mut std::io::stderr()),
        DataSource::Synthetic(spec) => Ok(generate_synthetic(spec)?),
    }
}

fn select(a: SelectArgs, out: &mut dyn Write) -> CliResult {
    let cfg = a.config.as_deref().map(load_config).transpose()?;
    let ds = read_data(&a.data, &mut std::io::stderr())?;
    let base = match &cfg {
        Some(c) => split_by_period(&ds, &c.base_years, c.test_year)?.0,
        None => ds.clone(),
    };
    let candidates = cfg.as_ref().and_then(|c| c.candidates.clone()).unwrap_or_else(|| ds.variable_names().to_vec());
    let defaults = StepwiseConfig::<f64>::default();
    let step = StepwiseConfig {
        f_enter: a.f_enter.or(cfg.as_ref().map(|c| c.f_enter)).unwrap_or(defaults.f_enter),
        f_remove: a.f_remove.or(cfg.as_ref().map(|c| c.f_remove)).unwrap_or(defaults.f_remove),
    };
    let trace = stepwise_select(&base, &candidates, &step)?;
    let tests = trace
        .selected
        .iter()
        .map(|v| group_mean_test(&base, v))
        .collect::<Result<Vec<_>, _>>()
        ?;
    for s in &trace.steps {
        let _ = writeln!(out, "step {} {} {} wilks={:.4} F={:.3}", s.step, s.action, s.variable, s.wilks_after, s.f_change);
    }
    let _ = writeln!(out, "selected: {}", trace.selected.join(" "));
    let _ = write!(out, "{}", dreport::table2_text(&tests));
    if let Some(dir) = a.out {
        write_file(&dir.join("table2.csv"), &dreport::table2_csv(&tests))?;
    }
    Ok(())
}

fn lda(a: LdaArgs, out: &mut dyn Write) -> CliResult {
    if let (Some(model_path), Some(score_path)) = (&a.model, &a.score) {
        let text = std::fs::read_to_string(model_path).with_context(|| format!("reading {}", model_path.display()))?;
        let model: crate::discriminant::LdaModel<f64> = dreport::read_model(&text)?;
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_path(score_path)
            .with_context(|| format!("reading {}", score_path.display()))?;
        let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
        let cols = model
            .variables
            .iter()
            .map(|v| header.iter().position(|h| h == v).ok_or_else(|| anyhow!("score file lacks column `{v}`")))
            .collect::<anyhow::Result<Vec<_>>>()?;
        for (i, row) in rdr.records().enumerate() {
            let row = row?;
            let x = cols
                .iter()
                .map(|&c| row.get(c).unwrap_or("").parse::<f64>().map_err(|_| anyhow!("row {}: bad number", i + 1)))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let _ = writeln!(out, "{}", model.score(&x)?);
        }
        return Ok(());
    }
    let Some(data) = a.data else {
        return Err(Failure::Usage("lda needs either --data, or --model with --score".into()));
    };
    let ds = read_data(&data, &mut std::io::stderr())?;
    let vars: Vec<String> = match a.vars {
        Some(v) => v.split_whitespace().map(str::to_string).collect(),
        None => ds.variable_names().to_vec(),
    };
    let model = fit_lda(&ds, &vars, a.priors)?;
    let table = classification_table(&model, &ds)?;
    let _ = write!(out, "{}\n{}", dreport::table3_text(&model), dreport::table4_text("input", &table));
    if let Some(dir) = a.out {
        write_file(&dir.join("model.txt"), &dreport::write_model(&model))?;
        write_file(&dir.join("table3.csv"), &dreport::table3_csv(&model))?;
        write_file(&dir.join("table4.csv"), &dreport::table4_csv(&[("input", &table)]))?;
    }
    Ok(())
}

fn parse_arch(s: &str) -> Result<Vec<usize>, Failure> {
    s.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| Failure::Usage(format!("invalid --arch value `{s}`"))))
        .collect()
}

fn mlp(a: MlpArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let arch = parse_arch(&a.arch)?;
    let ds = read_data(&a.data, err)?;
    if arch.first() != Some(&ds.variable_names().len()) {
        return Err(Failure::Usage(format!(
            "--arch must start with the input dimension {}",
            ds.variable_names().len()
        )));
    }
    let train = Batch::from_dataset(&ds);
    let cfg = TrainConfig { epochs: a.epochs, seed: a.seed, ..TrainConfig::default() };
    let init = init_network::<f64>(&arch, a.seed)?;
    let (net, history) = train_rprop(&init, &train, &cfg).map_err(|e| anyhow::Error::from(e.error))?;
    if a.verbose {
        for (i, e) in history.errors.iter().enumerate() {
            let _ = writeln!(err, "epoch {} error {e:.6e}", i + 1);
        }
    }
    let report = |name: &str, batch: &Batch<f64>, out: &mut dyn Write| -> anyhow::Result<()> {
        let outputs = net.predict(&batch.inputs)?;
        let e = mse(&outputs, &batch.targets, a.mse)?;
        let _ = writeln!(out, "{name} mse ({}): {e:.6}", a.mse);
        Ok(())
    };
    report("train", &train, out)?;
    if let Some(test_path) = &a.test {
        let test = Batch::from_dataset(&read_data(test_path, err)?.select(ds.variable_names())?);
        report("test", &test, out)?;
    }
    if let Some(dir) = a.out {
        write_file(&dir.join("network.txt"), &nformat::write_network(&net))?;
        let mut curve = String::from("epoch,error,best\n");
        for (i, (e, b)) in history.errors.iter().zip(&history.best_so_far).enumerate() {
            curve.push_str(&format!("{},{e},{b}\n", i + 1));
        }
        write_file(&dir.join("learning_curve.csv"), &curve)?;
    }
    Ok(())
}

fn search(a: SearchArgs, out: &mut dyn Write) -> CliResult {
    let mut cfg = load_config(&a.config)?;
    if let Some(e) = a.epochs {
        cfg.train.epochs = e;
    }
    if let Some(s) = a.seed {
        cfg.train.seed = s;
    }
    let ds = config_dataset(&cfg, a.data.as_deref())?;
    let ds = match &cfg.candidates {
        Some(c) => ds.select(c)?,
        None => ds,
    };
    let (base, test) = split_by_period(&ds, &cfg.base_years, cfg.test_year)?;
    let space = cfg.architectures(ds.variable_names().len());
    let rep = architecture_search(
        &Batch::from_dataset(&base),
        &Batch::from_dataset(&test),
        &space,
        &cfg.train,
        SearchOptions { threshold_on: cfg.threshold_on, parallel: cfg.parallel },
    )
    ?;
    let _ = write!(out, "{}", nformat::table5_text(&rep, &space));
    if let Some(dir) = a.out {
        write_file(&dir.join("table5.csv"), &nformat::table5_csv(&rep, &space))?;
        if let Some(best) = rep.best_result() {
            let body = nformat::table6_csv(&test.labels(), &best.test_outputs, &best.test_classes);
            write_file(&dir.join("table6.csv"), &body)?;
        }
    }
    Ok(())
}

fn compare(a: CompareArgs, out: &mut dyn Write) -> CliResult {
    let mut cfg = load_config(&a.config)?;
    if let Some(p) = a.priors {
        cfg.priors = p;
    }
    if let Some(e) = a.epochs {
        cfg.train.epochs = e;
    }
    if let Some(s) = a.seed {
        cfg.train.seed = s;
    }
    let ds = config_dataset(&cfg, a.data.as_deref())?;
    let report = run_pipeline(&ds, &cfg)?;
    write_outputs(&report, &a.out)?;
    let _ = writeln!(out, "selected: {}", report.selected_variables.join(" "));
    let _ = writeln!(out, "discriminant (base): {:.3}%", 100.0 * report.lda_rate);
    if let Some(r) = report.lda_test_rate {
        let _ = writeln!(out, "discriminant (test): {:.3}%", 100.0 * r);
    }
    let _ = writeln!(
        out,
        "network {} (test): {:.3}%",
        nformat::architecture_label(&report.nn_result.architecture),
        100.0 * report.nn_rate
    );
    let _ = writeln!(out, "outputs written to {}", a.out.display());
    Ok(())
}

fn synth(a: SynthArgs, out: &mut dyn Write) -> CliResult {
    if a.planted >= a.dimension {
        return Err(Failure::Usage("--planted must be below --dimension".into()));
    }
    let years: BTreeSet<i32> = a.years.iter().copied().collect();
    if years.len() != a.years.len() {
        return Err(Failure::Usage("--years contains duplicates".into()));
    }
    let spec = SyntheticSpec::planted(a.n0, a.n1, a.dimension, a.planted, a.separation, a.seed).with_years(a.years);
    let ds: Dataset<f64> = generate_synthetic(&spec)?;
    let csv = dataset_csv(&ds)?;
    match a.out {
        Some(p) => write_file(&p, &csv)?,
        None => {
            let _ = out.write_all(csv.as_bytes());
        }
    }
    Ok(())
}

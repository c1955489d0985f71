//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails other than the known failures listed in
//! `KNOWN_FAILURES`.

mod common;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use credit_lab::datamodel::{Class, Dataset};
use credit_lab::discriminant::{f_upper_tail, fit_lda, report, stepwise_select, ConfusionTable, LdaModel, Priors, StepwiseConfig};
use credit_lab::harness::{generate_synthetic, run_pipeline, PipelineConfig, SyntheticSpec};
use credit_lab::neural::{init_network, mse, threshold_classify, train_rprop, Batch, MseConvention, Rprop, TrainConfig};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Reference Wilks' Lambda is rounded to three decimals, which moves
/// ddl2·(1−Λ)/Λ by more than 0.01 for the weaker ratios.
const KNOWN_FAILURES: &[u32] = &[1];

type Check = Result<String, String>;
type Criterion = (u32, &'static str, u64, fn() -> Check);

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

// (ratio, Lambda, F, significance) reference values
const GROUP_TESTS: [(&str, f64, f64, f64); 9] = [
    ("R02", 0.992, 1.36, 0.245),
    ("R03", 0.993, 1.15, 0.285),
    ("R04", 0.989, 1.87, 0.174),
    ("R05", 0.979, 3.64, 0.058),
    ("R06", 0.999, 0.16, 0.693),
    ("R08", 0.952, 8.57, 0.004),
    ("R09", 0.984, 2.7, 0.102),
    ("R10", 0.986, 2.34, 0.128),
    ("R12", 0.953, 8.38, 0.004),
];

fn group_test_identity() -> Check {
    let mut bad = Vec::new();
    for (name, lambda, f, _) in GROUP_TESTS {
        let implied = 170.0 * (1.0 - lambda) / lambda;
        if (implied - f).abs() > 0.01 {
            bad.push(format!("{name}: {implied:.4} vs {f}"));
        }
    }
    if bad.is_empty() { Ok("9/9 rows within 0.01".into()) } else { Err(bad.join("; ")) }
}

fn group_test_rounding() -> Check {
    let mut bad = Vec::new();
    for (name, lambda, f, p) in GROUP_TESTS {
        let implied = 170.0 / (170.0 + f);
        if format!("{implied:.3}") != format!("{lambda:.3}") {
            bad.push(format!("{name}: lambda {implied:.4}"));
        }
        // F is given to a few decimals; the significance only has to be
        // reachable from some F that rounds to the printed value
        let decimals = f.to_string().split('.').nth(1).map_or(0, str::len);
        let half = 0.5 * 10f64.powi(-(decimals as i32));
        let (lo, hi) = (f_upper_tail(f + half, 1.0, 170.0), f_upper_tail(f - half, 1.0, 170.0));
        if hi < p - 0.0005 || lo > p + 0.0005 {
            bad.push(format!("{name}: p in [{lo:.4}, {hi:.4}] vs {p}"));
        }
    }
    if bad.is_empty() { Ok("Lambda and significance consistent with F on 9/9 rows".into()) } else { Err(bad.join("; ")) }
}

fn coefficient_scoring() -> Check {
    let text = std::fs::read_to_string(fixture("table3.model")).map_err(|e| e.to_string())?;
    let model: LdaModel<f64> = report::read_model(&text).map_err(|e| e.to_string())?;
    let reference = [1.671, -0.779, -0.566, -6.151, 0.087, 1.364, 0.008, 0.005, 0.037];
    let origin = model.score(&[0.0; 9]).map_err(|e| e.to_string())?;
    if origin != -0.188 {
        return Err(format!("score(0) = {origin}"));
    }
    for (i, b) in reference.iter().enumerate() {
        let mut x = [0.0; 9];
        x[i] = 1.0;
        let s = model.score(&x).map_err(|e| e.to_string())?;
        if format!("{s:.3}") != format!("{:.3}", b - 0.188) {
            return Err(format!("{}: {s:.3}", model.variables[i]));
        }
    }
    Ok("origin -0.188, 9 unit vectors".into())
}

fn confusion_rates() -> Check {
    let t = ConfusionTable::from_counts(10, 42, 2, 118);
    let got = (
        format!("{:.3}", 100.0 * t.class_rate(Class::NonPerforming)),
        format!("{:.3}", 100.0 * t.class_rate(Class::Performing)),
        format!("{:.1}", 100.0 * t.overall_rate()),
    );
    if got == ("19.231".into(), "98.333".into(), "74.4".into()) {
        Ok(format!("{} / {} / {}", got.0, got.1, got.2))
    } else {
        Err(format!("{got:?}"))
    }
}

fn network_replay() -> Check {
    let mut rdr = csv::Reader::from_path(fixture("table6.csv")).map_err(|e| e.to_string())?;
    let mut desired = Vec::new();
    let mut outputs = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|e| e.to_string())?;
        desired.push(Class::from_u8(row[1].parse().unwrap()).unwrap());
        outputs.push(row[2].parse::<f64>().unwrap());
    }
    let assigned = threshold_classify(&outputs, 0.785);
    let wrong: BTreeSet<usize> = (0..desired.len()).filter(|&i| desired[i] != assigned[i]).map(|i| i + 1).collect();
    let expected: BTreeSet<usize> = [10, 13, 16, 30, 31, 37, 38, 40, 42, 44, 48, 56, 60, 65, 76, 82, 83].into();
    let correct = desired.len() - wrong.len();
    let rate = format!("{:.2}", 100.0 * correct as f64 / desired.len() as f64);
    if desired.len() == 86 && correct == 69 && rate == "80.23" && wrong == expected {
        Ok(format!("{correct}/86 = {rate}%"))
    } else {
        Err(format!("{correct}/{} = {rate}%, misclassified {wrong:?}", desired.len()))
    }
}

fn gradient_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < 100 {
        let inputs = rng.random_range(1..=4);
        let mut arch = vec![inputs];
        for _ in 0..rng.random_range(1..=2) {
            arch.push(rng.random_range(1..=4));
        }
        arch.push(1);
        if credit_lab::neural::parameter_count(&arch) > 30 {
            continue;
        }
        let net = init_network::<f64>(&arch, rng.random()).map_err(|e| e.to_string())?;
        let n = rng.random_range(1..=8);
        let batch = common::random_batch(inputs, n, &mut rng);
        worst = worst.max(common::gradient_gap(&net, &batch, 1e-5));
        done += 1;
    }
    if worst <= 1e-5 { Ok(format!("worst relative error {worst:.2e}")) } else { Err(format!("worst relative error {worst:.2e}")) }
}

fn lda_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 1.0f64;
    for _ in 0..50 {
        let dim = rng.random_range(1..=5);
        let n0 = rng.random_range(dim + 2..=20);
        let n1 = rng.random_range(dim + 2..=20);
        let ds = common::random_dataset(dim, n0, n1, rng.random());
        let model = fit_lda(&ds, &common::names(dim), Priors::Proportional).map_err(|e| e.to_string())?;

        let mut means = [DVector::<f64>::zeros(dim), DVector::zeros(dim)];
        let mut counts = [0.0; 2];
        for r in ds.records() {
            means[r.label.index()] += DVector::from_column_slice(&r.values);
            counts[r.label.index()] += 1.0;
        }
        means[0] /= counts[0];
        means[1] /= counts[1];
        let mut w = DMatrix::<f64>::zeros(dim, dim);
        for r in ds.records() {
            let d = DVector::from_column_slice(&r.values) - &means[r.label.index()];
            w += &d * d.transpose();
        }
        w /= (n0 + n1 - 2) as f64;
        let chol = w.clone().cholesky().ok_or("within covariance not SPD")?;
        let direction = chol.solve(&(&means[1] - &means[0]));
        let beta = DVector::from_column_slice(&model.beta);
        worst = worst.min(beta.dot(&direction) / (beta.norm() * direction.norm()));
    }
    if worst >= 1.0 - 1e-9 { Ok(format!("min cosine 1 - {:.1e}", 1.0 - worst)) } else { Err(format!("min cosine {worst}")) }
}

fn stepwise_recovery() -> Check {
    let planted = 6;
    let target = format!("R{:02}", planted + 1);
    let mut hits = 0;
    for seed in 0..20 {
        let spec = SyntheticSpec::planted(100, 100, 10, planted, 4.0, seed);
        let ds: Dataset<f64> = generate_synthetic(&spec).map_err(|e| e.to_string())?;
        let names = ds.variable_names().to_vec();
        let trace = stepwise_select(&ds, &names, &StepwiseConfig::default()).map_err(|e| e.to_string())?;
        if trace.steps.first().map(|s| s.variable.as_str()) == Some(target.as_str()) {
            hits += 1;
        }
    }
    if hits >= 19 { Ok(format!("{hits}/20 seeds")) } else { Err(format!("{hits}/20 seeds")) }
}

fn rprop_behaviour() -> Check {
    // one parameter, f(w) = w²/2, gradient w
    let cfg = TrainConfig { delta_init: 0.1, ..TrainConfig::<f64>::default() };
    let mut opt = Rprop::new(1, &cfg);
    let mut w = [0.3];
    let s1 = 0.1;
    let s2 = s1 * 1.2;
    let s3 = s2 * 1.2;
    let s4 = s3 * 0.5;
    let s6 = s4 * 1.2;
    let s7 = s6 * 0.5;
    let w1 = 0.3 - s1;
    let w2 = w1 - s2;
    let w3 = w2 - s3;
    let w4 = w3 + s3;
    let w5 = w4 - s4;
    let w6 = w5 - s6;
    let w7 = w6 + s6;
    let expected = [(s1, w1), (s2, w2), (s3, w3), (s4, w4), (s4, w5), (s6, w6), (s7, w7)];
    for (k, (step, weight)) in expected.into_iter().enumerate() {
        let g = [w[0]];
        opt.update(&mut w, &g);
        if opt.step_sizes()[0] != step || w[0] != weight {
            return Err(format!("update {}: step {} w {}", k + 1, opt.step_sizes()[0], w[0]));
        }
    }

    let batch = Batch::new(vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0]], vec![0.0, 1.0, 1.0, 0.0])
        .map_err(|e| e.to_string())?;
    let net = init_network::<f64>(&[2, 4, 1], 3).map_err(|e| e.to_string())?;
    let xor_cfg = TrainConfig { epochs: 500, seed: 3, ..TrainConfig::default() };
    let (trained, _) = train_rprop(&net, &batch, &xor_cfg).map_err(|e| e.error.to_string())?;
    let out = trained.predict(&batch.inputs).map_err(|e| e.to_string())?;
    let e = mse(&out, &batch.targets, MseConvention::Mean).map_err(|e| e.to_string())?;
    let hits = threshold_classify(&out, 0.5).iter().zip(&batch.targets).filter(|(c, t)| c.target::<f64>() == **t).count();
    if e < 0.05 && hits == 4 {
        Ok(format!("schedule exact, XOR mean MSE {e:.2e}"))
    } else {
        Err(format!("XOR mean MSE {e}, {hits}/4 correct"))
    }
}

fn dir_contents(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

fn end_to_end_determinism() -> Check {
    let conf = fixture("synthetic.conf");
    let mut dirs = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let argv = ["creditlab", "compare", "--config", conf.to_str().unwrap(), "--out", dir.path().to_str().unwrap()];
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = credit_lab::cli::run(argv, &mut out, &mut err);
        if code != 0 {
            return Err(String::from_utf8_lossy(&err).into_owned());
        }
        dirs.push(dir);
    }
    let (a, b) = (dir_contents(dirs[0].path()), dir_contents(dirs[1].path()));
    if a == b && a.len() == 6 { Ok(format!("{} files identical", a.len())) } else { Err("output directories differ".into()) }
}

fn separable_sanity() -> Check {
    let spec = SyntheticSpec::planted(30, 30, 4, 0, 6.0, 42).with_years(vec![2005, 2006, 2007]);
    let ds: Dataset<f64> = generate_synthetic(&spec).map_err(|e| e.to_string())?;
    let cfg = PipelineConfig::default();
    let rep = run_pipeline(&ds, &cfg).map_err(|e| e.to_string())?;
    let lda = rep.lda_test_rate.ok_or("empty test sample")?;
    let line = format!("discriminant {:.1}%, network {:.1}%", 100.0 * lda, 100.0 * rep.nn_rate);
    if lda >= 0.95 && rep.nn_rate >= 0.95 { Ok(line) } else { Err(line) }
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "group-test identity F = ddl2(1-L)/L within 0.01", 1, group_test_identity),
        (2, "reference coefficients score fixture", 1, coefficient_scoring),
        (3, "classification table rates", 1, confusion_rates),
        (4, "reference network outputs at threshold 0.785", 1, network_replay),
        (5, "backprop vs central differences", 10, gradient_oracle),
        (6, "discriminant direction vs independent solve", 5, lda_oracle),
        (7, "stepwise recovers planted variable", 10, stepwise_recovery),
        (8, "rprop schedule and XOR", 5, rprop_behaviour),
        (9, "compare output is byte-identical across runs", 30, end_to_end_determinism),
        (10, "separable synthetic data", 60, separable_sanity),
    ];
    let mut unexpected = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let slow = elapsed > Duration::from_secs(limit);
        let (status, detail) = match (&result, slow) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over {limit}s limit")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        let known = status == "FAIL" && KNOWN_FAILURES.contains(&id);
        if status == "FAIL" && !known {
            unexpected += 1;
        }
        let tag = if known { " (known)" } else { "" };
        println!("criterion {id:>2} {status}{tag} [{:.2}s] {name}: {detail}", elapsed.as_secs_f64());
    }
    let (status, detail) = match group_test_rounding() {
        Ok(d) => ("PASS", d),
        Err(d) => {
            unexpected += 1;
            ("FAIL", d)
        }
    };
    println!("supplementary {status} reference group tests are mutually consistent after rounding: {detail}");
    if unexpected > 0 {
        std::process::exit(1);
    }
}

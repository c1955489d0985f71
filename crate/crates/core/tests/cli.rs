use std::path::{Path, PathBuf};

use credit_lab::cli::run;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("creditlab").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn scores_reference_model_at_origin() {
    let (model, zeros) = (fixture("table3.model"), fixture("zeros.csv"));
    let (code, out, _) = invoke(&["lda", "--model", model.to_str().unwrap(), "--score", zeros.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "-0.188");
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let (code, out, err) = invoke(&["frobnicate"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("Usage"), "{err}");
}

#[test]
fn bad_arch_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("d.csv");
    assert_eq!(invoke(&["synth", "--dimension", "2", "--out", data.to_str().unwrap()]).0, 0);
    let (code, _, err) = invoke(&["mlp", "--data", data.to_str().unwrap(), "--arch", "2 x 1"]);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = invoke(&["mlp", "--data", data.to_str().unwrap(), "--arch", "3 2 1"]);
    assert_eq!(code, 2);
}

#[test]
fn missing_file_is_data_error() {
    let (code, _, err) = invoke(&["ingest", "--data", "/nonexistent/firms.csv"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"), "{err}");
}

#[test]
fn synth_then_ingest_select_lda_mlp() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("firms.csv");
    let data_s = data.to_str().unwrap();
    let (code, _, err) = invoke(&["synth", "--n0", "20", "--n1", "20", "--dimension", "3", "--separation", "4", "--out", data_s]);
    assert_eq!(code, 0, "{err}");

    let (code, out, _) = invoke(&["ingest", "--data", data_s]);
    assert_eq!(code, 0);
    assert!(out.contains("records: 120"), "{out}");

    let (code, out, _) = invoke(&["select", "--data", data_s]);
    assert_eq!(code, 0);
    assert!(out.contains("selected: R01"), "{out}");

    let out_dir = dir.path().join("lda");
    let (code, _, _) = invoke(&["lda", "--data", data_s, "--vars", "R01", "--priors", "equal", "--out", out_dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    let model = out_dir.join("model.txt");
    let (code, out, _) = invoke(&["lda", "--model", model.to_str().unwrap(), "--score", data_s]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 120);

    let (code, out, err) = invoke(&["mlp", "--data", data_s, "--arch", "3 2 1", "--epochs", "5", "--mse", "half_sum", "--verbose"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("train mse (half_sum)"), "{out}");
    assert_eq!(err.lines().filter(|l| l.starts_with("epoch ")).count(), 5);
}

#[test]
fn compare_writes_all_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let conf = fixture("synthetic.conf");
    let (code, out, err) = invoke(&["compare", "--config", conf.to_str().unwrap(), "--epochs", "30", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("network"));
    for f in credit_lab::harness::OUTPUT_FILES {
        assert!(dir.path().join(f).is_file(), "{f}");
    }
}

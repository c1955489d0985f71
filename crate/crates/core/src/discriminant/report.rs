//! Table 2 / 3 / 4 emitters (CSV and aligned text) and the plain-text
//! discriminant model file.
//!
//! Rounding: Lambda 3 decimals, F 2, coefficients 3, percentages 3 (the
//! overall rate is shown with 1).

use std::fmt::Write as _;

use super::{ConfusionTable, DiscriminantError, GroupMeanTest, LdaModel};
use crate::datamodel::Class;
use crate::Scalar;

pub const CONSTANT_LABEL: &str = "(constant)";

pub fn table2_csv<T: Scalar>(tests: &[GroupMeanTest<T>]) -> String {
    let mut s = String::from("variable,wilks_lambda,f,ddl1,ddl2,significance\n");
    for t in tests {
        let _ = writeln!(
            s,
            "{},{:.3},{:.2},{},{},{:.3}",
            t.variable,
            t.lambda.as_f64(),
            t.f_stat.as_f64(),
            t.ddl1,
            t.ddl2,
            t.p_value.as_f64()
        );
    }
    s
}

pub fn table2_text<T: Scalar>(tests: &[GroupMeanTest<T>]) -> String {
    let mut s = format!("{:<10}{:>16}{:>10}{:>6}{:>6}{:>14}\n", "", "Wilks' Lambda", "F", "ddl1", "ddl2", "Significance");
    for t in tests {
        let _ = writeln!(
            s,
            "{:<10}{:>16.3}{:>10.2}{:>6}{:>6}{:>14.3}",
            t.variable,
            t.lambda.as_f64(),
            t.f_stat.as_f64(),
            t.ddl1,
            t.ddl2,
            t.p_value.as_f64()
        );
    }
    s
}

pub fn table3_csv<T: Scalar>(model: &LdaModel<T>) -> String {
    let mut s = String::from("variable,coefficient\n");
    for (v, b) in model.variables.iter().zip(&model.beta) {
        let _ = writeln!(s, "{v},{:.3}", b.as_f64());
    }
    let _ = writeln!(s, "{CONSTANT_LABEL},{:.3}", model.alpha.as_f64());
    s
}

pub fn table3_text<T: Scalar>(model: &LdaModel<T>) -> String {
    let mut s = format!("{:<12}{:>12}\n", "", "Function 1");
    for (v, b) in model.variables.iter().zip(&model.beta) {
        let _ = writeln!(s, "{v:<12}{:>12.3}", b.as_f64());
    }
    let _ = writeln!(s, "{CONSTANT_LABEL:<12}{:>12.3}", model.alpha.as_f64());
    s
}

pub fn table4_csv(tables: &[(&str, &ConfusionTable)]) -> String {
    let mut s = String::from("sample,actual,pred_0,pred_1,total,pct_0,pct_1,overall_pct\n");
    for (sample, t) in tables {
        for actual in [Class::NonPerforming, Class::Performing] {
            let row = t.counts[actual.index()];
            let _ = writeln!(
                s,
                "{sample},{actual},{},{},{},{:.3},{:.3},{:.3}",
                row[0],
                row[1],
                t.class_total(actual),
                100.0 * t.row_rate(actual, Class::NonPerforming),
                100.0 * t.row_rate(actual, Class::Performing),
                100.0 * t.overall_rate()
            );
        }
    }
    s
}

pub fn table4_text(sample: &str, t: &ConfusionTable) -> String {
    let mut s = format!("Classification results ({sample} sample)\n");
    let _ = writeln!(s, "{:<18}{:>10}{:>10}{:>10}", "actual \\ predicted", "0", "1", "Total");
    for actual in [Class::NonPerforming, Class::Performing] {
        let row = t.counts[actual.index()];
        let _ = writeln!(s, "{:<18}{:>10}{:>10}{:>10}", format!("count {actual}"), row[0], row[1], t.class_total(actual));
    }
    for actual in [Class::NonPerforming, Class::Performing] {
        let _ = writeln!(
            s,
            "{:<18}{:>10.3}{:>10.3}{:>10}",
            format!("% {actual}"),
            100.0 * t.row_rate(actual, Class::NonPerforming),
            100.0 * t.row_rate(actual, Class::Performing),
            100
        );
    }
    let _ = writeln!(s, "{:.1}% of observations correctly classified.", 100.0 * t.overall_rate());
    s
}

/// Serializes a model as `key value...` lines.
pub fn write_model<T: Scalar>(model: &LdaModel<T>) -> String {
    let join = |v: &[T]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut s = String::from("# linear discriminant model v1\n");
    let _ = writeln!(s, "variables {}", model.variables.join(" "));
    let _ = writeln!(s, "beta {}", join(&model.beta));
    let _ = writeln!(s, "alpha {}", model.alpha);
    let _ = writeln!(s, "priors {}", join(&model.priors));
    let _ = writeln!(s, "cutoff {}", model.cutoff);
    if let Some(c) = model.centroids {
        let _ = writeln!(s, "centroids {}", join(&c));
    }
    s
}

/// Parses [`write_model`] output. `variables`, `beta` and `alpha` are
/// required; `priors` defaults to equal, `cutoff` to zero.
pub fn read_model<T: Scalar>(text: &str) -> Result<LdaModel<T>, DiscriminantError> {
    let mut variables = None;
    let mut beta = None;
    let mut alpha = None;
    let mut priors = None;
    let mut cutoff = None;
    let mut centroids = None;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| DiscriminantError::ModelFormat { line: line_no, message };
        let mut parts = line.split_whitespace();
        let key = parts.next().unwrap_or_default();
        let rest: Vec<&str> = parts.collect();
        let nums = || -> Result<Vec<T>, DiscriminantError> {
            rest.iter()
                .map(|v| v.parse::<T>().map_err(|_| err(format!("bad number `{v}`"))))
                .collect()
        };
        let pair = || -> Result<[T; 2], DiscriminantError> {
            let v = nums()?;
            <[T; 2]>::try_from(v).map_err(|_| err(format!("`{key}` needs two values")))
        };
        let single = || -> Result<T, DiscriminantError> {
            match nums()?.as_slice() {
                [v] => Ok(*v),
                _ => Err(err(format!("`{key}` needs one value"))),
            }
        };
        match key {
            "variables" => variables = Some(rest.iter().map(|s| s.to_string()).collect::<Vec<_>>()),
            "beta" => beta = Some(nums()?),
            "alpha" => alpha = Some(single()?),
            "cutoff" => cutoff = Some(single()?),
            "priors" => priors = Some(pair()?),
            "centroids" => centroids = Some(pair()?),
            other => return Err(err(format!("unknown key `{other}`"))),
        }
    }
    let missing = |k: &str| DiscriminantError::ModelFormat { line: last_line, message: format!("missing `{k}`") };
    let mut model = LdaModel::from_coefficients(
        variables.ok_or_else(|| missing("variables"))?,
        alpha.ok_or_else(|| missing("alpha"))?,
        beta.ok_or_else(|| missing("beta"))?,
    )?;
    if let Some(p) = priors {
        model.priors = p;
    }
    model.centroids = centroids;
    if let Some(c) = cutoff {
        model.cutoff = c;
    }
    Ok(model)
}

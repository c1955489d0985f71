use std::fmt::Write as _;
use std::path::Path;

use super::{HarnessError, PipelineConfig, Stage};
use crate::datamodel::{split_by_period, Class, Dataset};
use crate::discriminant::{
    classification_table, fit_lda, group_mean_test, report as dreport, stepwise_select, ConfusionTable, DiscriminantError,
    GroupMeanTest, LdaModel, StepwiseConfig, StepwiseTrace,
};
use crate::neural::{architecture_search, format as nformat, Batch, EvalResult, SearchOptions, SearchReport, TrainConfig};
use crate::Scalar;

pub const OUTPUT_FILES: [&str; 6] = ["table2.csv", "table3.csv", "table4.csv", "table5.csv", "table6.csv", "report.txt"];

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport<T> {
    /// Discriminant rate on the base sample.
    pub lda_rate: f64,
    /// Discriminant rate on the test sample, when it is non-empty.
    pub lda_test_rate: Option<f64>,
    /// Best network's median-threshold rate on the test sample.
    pub nn_rate: f64,
    pub lda_table: ConfusionTable,
    pub lda_test_table: Option<ConfusionTable>,
    pub nn_result: EvalResult<T>,
    pub selected_variables: Vec<String>,
    pub trace: StepwiseTrace<T>,
    pub group_tests: Vec<GroupMeanTest<T>>,
    pub model: LdaModel<T>,
    pub search: SearchReport<T>,
    pub architectures: Vec<Vec<usize>>,
    pub test_labels: Vec<Class>,
    pub base_size: usize,
    pub test_size: usize,
}

fn train_config<T: Scalar>(c: &TrainConfig<f64>) -> TrainConfig<T> {
    TrainConfig {
        epochs: c.epochs,
        eta_plus: T::c(c.eta_plus),
        eta_minus: T::c(c.eta_minus),
        delta_init: T::c(c.delta_init),
        delta_max: T::c(c.delta_max),
        delta_min: T::c(c.delta_min),
        seed: c.seed,
    }
}

/// split -> stepwise -> group tests -> discriminant -> architecture search.
// Drops the sign of values that round to zero.
fn fixed4(x: f64) -> String {
    let s = format!("{x:.4}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

pub fn run_pipeline<T: Scalar>(dataset: &Dataset<T>, config: &PipelineConfig) -> Result<ComparisonReport<T>, HarnessError> {
    if !dataset.has_both_classes() {
        return Err(HarnessError::Stage { stage: Stage::Data, source: DiscriminantError::MissingClass.into() });
    }
    let (base, test) = split_by_period(dataset, &config.base_years, config.test_year).map_err(HarnessError::at(Stage::Split))?;

    let candidates = config.candidates.clone().unwrap_or_else(|| dataset.variable_names().to_vec());
    let step_cfg = StepwiseConfig { f_enter: T::c(config.f_enter), f_remove: T::c(config.f_remove) };
    let trace = stepwise_select(&base, &candidates, &step_cfg).map_err(HarnessError::at(Stage::Stepwise))?;
    let selected = trace.selected.clone();

    let group_tests = selected
        .iter()
        .map(|v| group_mean_test(&base, v))
        .collect::<Result<Vec<_>, _>>()
        .map_err(HarnessError::at(Stage::GroupTests))?;

    let model = fit_lda(&base, &selected, config.priors).map_err(HarnessError::at(Stage::Lda))?;
    let lda_table = classification_table(&model, &base).map_err(HarnessError::at(Stage::Lda))?;
    let lda_test_table = if test.is_empty() {
        None
    } else {
        Some(classification_table(&model, &test).map_err(HarnessError::at(Stage::Lda))?)
    };

    let train_ds = base.select(&selected).map_err(HarnessError::at(Stage::Search))?;
    let test_ds = test.select(&selected).map_err(HarnessError::at(Stage::Search))?;
    let architectures = config.architectures(selected.len());
    let search = architecture_search(
        &Batch::from_dataset(&train_ds),
        &Batch::from_dataset(&test_ds),
        &architectures,
        &train_config(&config.train),
        SearchOptions { threshold_on: config.threshold_on, parallel: config.parallel },
    )
    .map_err(HarnessError::at(Stage::Search))?;
    let nn_result = match search.best_result() {
        Some(r) => r.clone(),
        None => {
            let first = search.results.iter().find_map(|r| r.as_ref().err()).cloned();
            return Err(HarnessError::at(Stage::Search)(first.unwrap_or(crate::neural::NeuralError::EmptyInput)));
        }
    };

    Ok(ComparisonReport {
        lda_rate: lda_table.overall_rate(),
        lda_test_rate: lda_test_table.map(|t| t.overall_rate()),
        nn_rate: nn_result.classification_rate,
        lda_table,
        lda_test_table,
        nn_result,
        selected_variables: selected,
        trace,
        group_tests,
        model,
        search,
        architectures,
        test_labels: test.labels(),
        base_size: base.len(),
        test_size: test.len(),
    })
}

impl<T: Scalar> ComparisonReport<T> {
    pub fn table4_csv(&self) -> String {
        let mut tables = vec![("base", &self.lda_table)];
        if let Some(t) = &self.lda_test_table {
            tables.push(("test", t));
        }
        dreport::table4_csv(&tables)
    }

    pub fn table6_csv(&self) -> String {
        nformat::table6_csv(&self.test_labels, &self.nn_result.test_outputs, &self.nn_result.test_classes)
    }

    pub fn report_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "Credit scoring comparison");
        let _ = writeln!(s, "base sample: {} records; test sample: {} records\n", self.base_size, self.test_size);
        let _ = writeln!(s, "Stepwise selection (Wilks' Lambda)");
        let _ = writeln!(s, "{:>5}  {:<7}{:<10}{:>14}{:>12}", "step", "action", "variable", "wilks_after", "F");
        for st in &self.trace.steps {
            let _ = writeln!(
                s,
                "{:>5}  {:<7}{:<10}{:>14.4}{:>12.3}",
                st.step,
                st.action.to_string(),
                st.variable,
                st.wilks_after.as_f64(),
                st.f_change.as_f64()
            );
        }
        let _ = writeln!(s, "selected: {}\n", self.selected_variables.join(", "));
        let _ = writeln!(s, "Tests of equality of group means (base sample)");
        s.push_str(&dreport::table2_text(&self.group_tests));
        let _ = writeln!(s, "\nCanonical discriminant function coefficients");
        s.push_str(&dreport::table3_text(&self.model));
        if let Some([c0, c1]) = self.model.centroids {
            let _ = writeln!(s, "centroids: class 0 = {:.4}, class 1 = {:.4}", c0.as_f64(), c1.as_f64());
        }
        let _ = writeln!(
            s,
            "priors: {:.4} / {:.4}; cutoff = {}\n",
            self.model.priors[0].as_f64(),
            self.model.priors[1].as_f64(),
            fixed4(self.model.cutoff.as_f64())
        );
        s.push_str(&dreport::table4_text("base", &self.lda_table));
        if let Some(t) = &self.lda_test_table {
            s.push('\n');
            s.push_str(&dreport::table4_text("test", t));
        }
        let _ = writeln!(s, "\nNetwork architecture search (mean squared error)");
        s.push_str(&nformat::table5_text(&self.search, &self.architectures));
        let _ = writeln!(s, "best: {}\n", nformat::architecture_label(&self.nn_result.architecture));
        s.push_str(&nformat::table6_text(&self.nn_result, &self.test_labels));
        let _ = writeln!(s, "\nClassification rates");
        let _ = writeln!(s, "{:<40}{:>9.3}%", "discriminant analysis (base sample)", 100.0 * self.lda_rate);
        if let Some(r) = self.lda_test_rate {
            let _ = writeln!(s, "{:<40}{:>9.3}%", "discriminant analysis (test sample)", 100.0 * r);
        }
        let _ = writeln!(s, "{:<40}{:>9.3}%", "neural network (test sample)", 100.0 * self.nn_rate);
        s
    }
}

/// Writes the six output files into `dir`, creating it if needed.
pub fn write_outputs<T: Scalar>(report: &ComparisonReport<T>, dir: &Path) -> Result<(), HarnessError> {
    std::fs::create_dir_all(dir)?;
    let contents = [
        dreport::table2_csv(&report.group_tests),
        dreport::table3_csv(&report.model),
        report.table4_csv(),
        nformat::table5_csv(&report.search, &report.architectures),
        report.table6_csv(),
        report.report_text(),
    ];
    for (name, body) in OUTPUT_FILES.iter().zip(contents) {
        std::fs::write(dir.join(name), body)?;
    }
    Ok(())
}

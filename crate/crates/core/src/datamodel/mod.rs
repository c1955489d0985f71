//! Financial statements, the fifteen ratios, labeled firm datasets and the
//! year-based base/test split.

mod csvio;
mod dataset;
mod ratios;

pub use csvio::{load_dataset, write_dataset, ColumnSchema, Loaded, SkippedRow};
pub use dataset::{split_by_period, Class, Dataset, FirmRecord};
pub use ratios::{compute_ratios, FinancialStatement, RatioCode, RatioVector, STATEMENT_FIELDS};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DataError {
    #[error("division by zero computing {0}")]
    DivisionByZero(RatioCode),
    #[error("cannot parse row {row}, column `{column}`")]
    ParseError { row: usize, column: String },
    #[error("missing column `{0}`")]
    MissingColumn(String),
    #[error("invalid label on row {0} (expected 0 or 1)")]
    InvalidLabel(usize),
    #[error("column `{0}` is neither a statement field nor a ratio code")]
    UnknownColumn(String),
    #[error("file mixes statement columns and ratio columns")]
    MixedColumns,
    #[error("record `{firm_id}` has year {year} outside the split")]
    YearOutsideSplit { firm_id: String, year: i32 },
    #[error("record `{firm_id}` has {found} values, dataset has {expected} variables")]
    RecordWidth { firm_id: String, expected: usize, found: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("non-finite value in record `{0}`")]
    NonFinite(String),
    #[error("csv: {0}")]
    Csv(String),
}

impl From<csv::Error> for DataError {
    fn from(e: csv::Error) -> Self {
        DataError::Csv(e.to_string())
    }
}

use std::io::{Read, Write};

use super::{compute_ratios, Class, DataError, Dataset, FinancialStatement, FirmRecord, RatioCode, STATEMENT_FIELDS};
use crate::Scalar;

/// Names of the reserved columns. Defaults: `firm_id`, `year`, `label`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnSchema {
    pub firm_id: String,
    pub year: String,
    pub label: String,
    /// `(source column, canonical name)` pairs applied to the header before
    /// matching statement fields or ratio codes.
    pub renames: Vec<(String, String)>,
}

impl Default for ColumnSchema {
    fn default() -> Self {
        Self { firm_id: "firm_id".into(), year: "year".into(), label: "label".into(), renames: Vec::new() }
    }
}

/// A row dropped because a ratio denominator was zero. `row` is 1-based,
/// header excluded.
#[derive(Debug, Clone, PartialEq)]
pub struct SkippedRow {
    pub row: usize,
    pub firm_id: String,
    pub error: DataError,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Loaded<T> {
    pub dataset: Dataset<T>,
    pub skipped: Vec<SkippedRow>,
}

enum Layout {
    Statements([usize; 16]),
    Ratios(Vec<usize>),
}

fn is_variable_code(name: &str) -> bool {
    let b = name.as_bytes();
    b.len() == 3 && (b[0] == b'R' || b[0] == b'r') && b[1].is_ascii_digit() && b[2].is_ascii_digit()
}

/// Reads a dataset from CSV. Columns other than the reserved ones are either
/// all sixteen statement fields (ratios are then computed) or variable codes
/// `Rnn` taken verbatim.
pub fn load_dataset<T: Scalar, R: Read>(source: R, schema: &ColumnSchema) -> Result<Loaded<T>, DataError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(source);
    let header: Vec<String> = rdr
        .headers()?
        .iter()
        .map(|h| {
            schema
                .renames
                .iter()
                .find(|(from, _)| from == h)
                .map_or_else(|| h.to_string(), |(_, to)| to.clone())
        })
        .collect();
    let find = |name: &str| {
        header.iter().position(|h| h == name).ok_or_else(|| DataError::MissingColumn(name.to_string()))
    };
    let id_col = find(&schema.firm_id)?;
    let year_col = find(&schema.year)?;
    let label_col = find(&schema.label)?;

    let mut statement_cols = Vec::new();
    let mut ratio_cols = Vec::new();
    for (i, h) in header.iter().enumerate() {
        if i == id_col || i == year_col || i == label_col {
            continue;
        }
        if STATEMENT_FIELDS.contains(&h.as_str()) {
            statement_cols.push(i);
        } else if is_variable_code(h) {
            ratio_cols.push(i);
        } else {
            return Err(DataError::UnknownColumn(h.clone()));
        }
    }
    if !statement_cols.is_empty() && !ratio_cols.is_empty() {
        return Err(DataError::MixedColumns);
    }
    let (layout, variable_names) = if statement_cols.is_empty() {
        let names = ratio_cols.iter().map(|&i| header[i].to_ascii_uppercase()).collect();
        (Layout::Ratios(ratio_cols), names)
    } else {
        let mut idx = [0usize; 16];
        for (k, field) in STATEMENT_FIELDS.iter().enumerate() {
            idx[k] = find(field)?;
        }
        (Layout::Statements(idx), RatioCode::ALL.iter().map(|c| c.to_string()).collect())
    };

    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for (k, row) in rdr.records().enumerate() {
        let row_no = k + 1;
        let row = row?;
        let cell = |i: usize| row.get(i).unwrap_or("");
        let parse_value = |i: usize| -> Result<T, DataError> {
            cell(i)
                .parse::<T>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| DataError::ParseError { row: row_no, column: header[i].clone() })
        };
        let firm_id = cell(id_col).to_string();
        let year = cell(year_col)
            .parse::<i32>()
            .map_err(|_| DataError::ParseError { row: row_no, column: header[year_col].clone() })?;
        let label = cell(label_col)
            .parse::<u8>()
            .ok()
            .and_then(Class::from_u8)
            .ok_or(DataError::InvalidLabel(row_no))?;
        let values = match &layout {
            Layout::Ratios(cols) => cols.iter().map(|&i| parse_value(i)).collect::<Result<Vec<_>, _>>()?,
            Layout::Statements(cols) => {
                let mut v = [T::zero(); 16];
                for (slot, &i) in v.iter_mut().zip(cols) {
                    *slot = parse_value(i)?;
                }
                match compute_ratios(&FinancialStatement::from_array(v)) {
                    Ok(r) => r.as_slice().to_vec(),
                    Err(error @ DataError::DivisionByZero(_)) => {
                        skipped.push(SkippedRow { row: row_no, firm_id, error });
                        continue;
                    }
                    Err(e) => return Err(e),
                }
            }
        };
        records.push(FirmRecord { firm_id, year, label, values });
    }
    Ok(Loaded { dataset: Dataset::new(variable_names, records)?, skipped })
}

/// Writes `firm_id,year,label,<variables...>` with shortest round-trip decimals.
pub fn write_dataset<T: Scalar, W: Write>(dataset: &Dataset<T>, sink: W) -> Result<(), DataError> {
    let mut w = csv::Writer::from_writer(sink);
    let mut header = vec!["firm_id".to_string(), "year".into(), "label".into()];
    header.extend(dataset.variable_names().iter().cloned());
    w.write_record(&header)?;
    for r in dataset.records() {
        let mut row = vec![r.firm_id.clone(), r.year.to_string(), r.label.to_string()];
        row.extend(r.values.iter().map(|v| v.to_string()));
        w.write_record(&row)?;
    }
    w.flush().map_err(|e| DataError::Csv(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Result<Loaded<f64>, DataError> {
        load_dataset(text.as_bytes(), &ColumnSchema::default())
    }

    #[test]
    fn three_row_ratio_file() {
        let l = load("firm_id,year,label,R08,R12\na,2005,1,0.5,0.25\nb,2005,0,0.1,0.9\nc,2006,1,-2,3\n").unwrap();
        assert_eq!(l.dataset.len(), 3);
        assert_eq!(l.dataset.variable_names(), ["R08", "R12"]);
        assert_eq!(l.dataset.records()[2].values, vec![-2.0, 3.0]);
        assert!(l.skipped.is_empty());
    }

    #[test]
    fn label_two_on_row_four() {
        let text = "firm_id,year,label,R01\na,2005,1,1\nb,2005,0,1\nc,2005,1,1\nd,2005,2,1\n";
        assert_eq!(load(text), Err(DataError::InvalidLabel(4)));
    }

    #[test]
    fn missing_reserved_column() {
        assert_eq!(load("firm_id,label,R01\na,1,1\n"), Err(DataError::MissingColumn("year".into())));
    }

    #[test]
    fn parse_error_names_row_and_column() {
        assert_eq!(
            load("firm_id,year,label,R01\na,2005,1,abc\n"),
            Err(DataError::ParseError { row: 1, column: "R01".into() })
        );
    }

    #[test]
    fn mixed_columns_rejected() {
        assert_eq!(load("firm_id,year,label,R01,chiffre_affaires\na,2005,1,1,2\n"), Err(DataError::MixedColumns));
    }

    fn statement_csv(rows: &[[f64; 16]]) -> String {
        let mut s = format!("firm_id,year,label,{}\n", STATEMENT_FIELDS.join(","));
        for (i, r) in rows.iter().enumerate() {
            let vals: Vec<String> = r.iter().map(|v| v.to_string()).collect();
            s.push_str(&format!("f{i},2005,1,{}\n", vals.join(",")));
        }
        s
    }

    #[test]
    fn statements_are_converted_and_zero_denominators_skipped() {
        let mut good = [2.0; 16];
        good[1] = 1.0; // valeur_ajoutee
        let mut bad = [2.0; 16];
        bad[9] = 0.0; // capitaux_permanents
        let l = load(&statement_csv(&[good, bad, good])).unwrap();
        assert_eq!(l.dataset.len(), 2);
        assert_eq!(l.dataset.variable_names().len(), 15);
        assert_eq!(l.dataset.records()[0].values[0], 0.5);
        assert_eq!(l.skipped.len(), 1);
        assert_eq!(l.skipped[0].row, 2);
        assert_eq!(l.skipped[0].error, DataError::DivisionByZero(RatioCode::R08));
    }

    #[test]
    fn renamed_columns() {
        let schema = ColumnSchema {
            label: "classe".into(),
            renames: vec![("r8".into(), "R08".into())],
            ..ColumnSchema::default()
        };
        let l: Loaded<f64> = load_dataset("firm_id,year,classe,r8\na,2007,0,0.3\n".as_bytes(), &schema).unwrap();
        assert_eq!(l.dataset.variable_names(), ["R08"]);
    }
}

use std::collections::BTreeSet;
use std::fmt;

use super::DataError;
use crate::Scalar;

/// Firm class: `1` = performing (healthy), `0` = non-performing (distressed).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Class {
    NonPerforming = 0,
    Performing = 1,
}

impl Class {
    pub fn from_u8(v: u8) -> Option<Self> {
        match v {
            0 => Some(Class::NonPerforming),
            1 => Some(Class::Performing),
            _ => None,
        }
    }

    pub fn as_u8(self) -> u8 {
        self as u8
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Network target value for this class.
    pub fn target<T: Scalar>(self) -> T {
        if self == Class::Performing {
            T::one()
        } else {
            T::zero()
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.as_u8(), f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FirmRecord<T> {
    pub firm_id: String,
    pub year: i32,
    pub label: Class,
    /// Values aligned with the owning dataset's `variable_names`.
    pub values: Vec<T>,
}

/// Ordered labeled observations sharing one variable set.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<T> {
    variable_names: Vec<String>,
    records: Vec<FirmRecord<T>>,
}

impl<T: Scalar> Dataset<T> {
    pub fn new(variable_names: Vec<String>, records: Vec<FirmRecord<T>>) -> Result<Self, DataError> {
        for r in &records {
            if r.values.len() != variable_names.len() {
                return Err(DataError::RecordWidth {
                    firm_id: r.firm_id.clone(),
                    expected: variable_names.len(),
                    found: r.values.len(),
                });
            }
            if r.values.iter().any(|v| !v.is_finite()) {
                return Err(DataError::NonFinite(r.firm_id.clone()));
            }
        }
        Ok(Self { variable_names, records })
    }

    pub fn variable_names(&self) -> &[String] {
        &self.variable_names
    }

    pub fn records(&self) -> &[FirmRecord<T>] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, DataError> {
        self.variable_names
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| DataError::UnknownVariable(name.to_string()))
    }

    /// Column indices of `names`, in the given order.
    pub fn indices_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>, DataError> {
        names.iter().map(|n| self.index_of(n.as_ref())).collect()
    }

    /// Projection onto a subset of variables, in the order given.
    pub fn select<S: AsRef<str>>(&self, names: &[S]) -> Result<Self, DataError> {
        let idx = self.indices_of(names)?;
        let records = self
            .records
            .iter()
            .map(|r| FirmRecord {
                firm_id: r.firm_id.clone(),
                year: r.year,
                label: r.label,
                values: idx.iter().map(|&i| r.values[i]).collect(),
            })
            .collect();
        Ok(Self {
            variable_names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            records,
        })
    }

    /// `[n0, n1]`.
    pub fn class_counts(&self) -> [usize; 2] {
        let mut c = [0, 0];
        for r in &self.records {
            c[r.label.index()] += 1;
        }
        c
    }

    pub fn has_both_classes(&self) -> bool {
        let [n0, n1] = self.class_counts();
        n0 > 0 && n1 > 0
    }

    pub fn inputs(&self) -> Vec<Vec<T>> {
        self.records.iter().map(|r| r.values.clone()).collect()
    }

    pub fn targets(&self) -> Vec<T> {
        self.records.iter().map(|r| r.label.target()).collect()
    }

    pub fn labels(&self) -> Vec<Class> {
        self.records.iter().map(|r| r.label).collect()
    }

    pub fn years(&self) -> BTreeSet<i32> {
        self.records.iter().map(|r| r.year).collect()
    }
}

/// Partitions records into the base sample (`year` in `base_years`) and the
/// test sample (`year == test_year`), preserving order.
pub fn split_by_period<T: Scalar>(
    dataset: &Dataset<T>,
    base_years: &BTreeSet<i32>,
    test_year: i32,
) -> Result<(Dataset<T>, Dataset<T>), DataError> {
    let mut base = Vec::new();
    let mut test = Vec::new();
    for r in dataset.records() {
        if base_years.contains(&r.year) {
            base.push(r.clone());
        } else if r.year == test_year {
            test.push(r.clone());
        } else {
            return Err(DataError::YearOutsideSplit { firm_id: r.firm_id.clone(), year: r.year });
        }
    }
    let names = dataset.variable_names().to_vec();
    Ok((Dataset { variable_names: names.clone(), records: base }, Dataset { variable_names: names, records: test }))
}

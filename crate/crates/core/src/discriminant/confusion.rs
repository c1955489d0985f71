use super::{DiscriminantError, LdaModel};
use crate::datamodel::{Class, Dataset};
use crate::Scalar;

/// Actual x predicted counts; `counts[actual][predicted]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConfusionTable {
    pub counts: [[usize; 2]; 2],
}

impl ConfusionTable {
    pub fn from_counts(n00: usize, n01: usize, n10: usize, n11: usize) -> Self {
        Self { counts: [[n00, n01], [n10, n11]] }
    }

    pub fn from_pairs<I: IntoIterator<Item = (Class, Class)>>(pairs: I) -> Self {
        let mut t = Self::default();
        for (actual, predicted) in pairs {
            t.counts[actual.index()][predicted.index()] += 1;
        }
        t
    }

    pub fn class_total(&self, actual: Class) -> usize {
        self.counts[actual.index()].iter().sum()
    }

    pub fn total(&self) -> usize {
        self.class_total(Class::NonPerforming) + self.class_total(Class::Performing)
    }

    pub fn correct(&self) -> usize {
        self.counts[0][0] + self.counts[1][1]
    }

    /// Fraction of `actual` records predicted as `predicted`; NaN for an
    /// empty class.
    pub fn row_rate(&self, actual: Class, predicted: Class) -> f64 {
        self.counts[actual.index()][predicted.index()] as f64 / self.class_total(actual) as f64
    }

    pub fn class_rate(&self, class: Class) -> f64 {
        self.row_rate(class, class)
    }

    pub fn overall_rate(&self) -> f64 {
        self.correct() as f64 / self.total() as f64
    }
}

pub fn classification_table<T: Scalar>(
    model: &LdaModel<T>,
    dataset: &Dataset<T>,
) -> Result<ConfusionTable, DiscriminantError> {
    let cols = dataset.indices_of(&model.variables)?;
    let mut x = vec![T::zero(); cols.len()];
    let mut pairs = Vec::with_capacity(dataset.len());
    for r in dataset.records() {
        for (slot, &c) in x.iter_mut().zip(&cols) {
            *slot = r.values[c];
        }
        pairs.push((r.label, model.classify(&x)?));
    }
    Ok(ConfusionTable::from_pairs(pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datamodel::FirmRecord;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reference_counts_replay() {
        let t = ConfusionTable::from_counts(10, 42, 2, 118);
        assert_eq!(format!("{:.3}", 100.0 * t.class_rate(Class::NonPerforming)), "19.231");
        assert_eq!(format!("{:.3}", 100.0 * t.class_rate(Class::Performing)), "98.333");
        assert_eq!(format!("{:.1}", 100.0 * t.overall_rate()), "74.4");
        assert_eq!(t.class_total(Class::NonPerforming), 52);
        assert_eq!(t.class_total(Class::Performing), 120);
    }

    #[test]
    fn random_records_match_loop_tally() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let records: Vec<_> = (0..20)
            .map(|i| FirmRecord {
                firm_id: i.to_string(),
                year: 2005,
                label: if rng.random::<bool>() { Class::Performing } else { Class::NonPerforming },
                values: vec![rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)],
            })
            .collect();
        let ds = Dataset::new(vec!["A".into(), "B".into()], records).unwrap();
        let model = LdaModel::from_coefficients(vec!["B".into(), "A".into()], 0.1, vec![1.5, -0.7]).unwrap();
        let table = classification_table(&model, &ds).unwrap();
        let mut tally = [[0usize; 2]; 2];
        for r in ds.records() {
            let z = 0.1 + 1.5 * r.values[1] - 0.7 * r.values[0];
            let pred = usize::from(z >= 0.0);
            tally[r.label.index()][pred] += 1;
        }
        assert_eq!(table.counts, tally);
    }

    #[test]
    fn perfect_classifier() {
        let t = ConfusionTable::from_pairs([(Class::Performing, Class::Performing), (Class::NonPerforming, Class::NonPerforming)]);
        assert_eq!(t.overall_rate(), 1.0);
        assert_eq!(t.counts[0][1] + t.counts[1][0], 0);
    }
}

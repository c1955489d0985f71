use std::fmt;
use std::str::FromStr;

use super::DataError;
use crate::Scalar;

/// The fifteen ratio codes `R01`..`R15`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RatioCode {
    R01,
    R02,
    R03,
    R04,
    R05,
    R06,
    R07,
    R08,
    R09,
    R10,
    R11,
    R12,
    R13,
    R14,
    R15,
}

impl RatioCode {
    pub const ALL: [RatioCode; 15] = [
        RatioCode::R01,
        RatioCode::R02,
        RatioCode::R03,
        RatioCode::R04,
        RatioCode::R05,
        RatioCode::R06,
        RatioCode::R07,
        RatioCode::R08,
        RatioCode::R09,
        RatioCode::R10,
        RatioCode::R11,
        RatioCode::R12,
        RatioCode::R13,
        RatioCode::R14,
        RatioCode::R15,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        const NAMES: [&str; 15] = [
            "R01", "R02", "R03", "R04", "R05", "R06", "R07", "R08", "R09", "R10", "R11", "R12",
            "R13", "R14", "R15",
        ];
        NAMES[self.index()]
    }

    pub fn label(self) -> &'static str {
        match self {
            RatioCode::R01 => "Taux de valeur ajoutee",
            RatioCode::R02 => "Rentabilite operationnelle",
            RatioCode::R03 => "Marge operationnelle",
            RatioCode::R04 => "Ratio d'endettement",
            RatioCode::R05 => "Ratio de marge beneficiaire",
            RatioCode::R06 => "Rentabilite financiere",
            RatioCode::R07 => "Ratio de solvabilite",
            RatioCode::R08 => "Dependance financiere",
            RatioCode::R09 => "Capacite de remboursement",
            RatioCode::R10 => "Rentabilite economique",
            RatioCode::R11 => "Ratio d'immobilisation de l'actif",
            RatioCode::R12 => "Autonomie financiere",
            RatioCode::R13 => "Marge brute d'autofinancement",
            RatioCode::R14 => "Evolution du fonds de roulement",
            RatioCode::R15 => "Ratio de synthese",
        }
    }
}

impl fmt::Display for RatioCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RatioCode {
    type Err = DataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RatioCode::ALL
            .iter()
            .copied()
            .find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| DataError::UnknownVariable(s.to_string()))
    }
}

/// Field names of [`FinancialStatement`], in declaration order. These are
/// also the CSV column names.
pub const STATEMENT_FIELDS: [&str; 16] = [
    "chiffre_affaires",
    "valeur_ajoutee",
    "excedent_brut_exploitation",
    "resultat_exploitation",
    "charges_financieres",
    "resultat_net",
    "fonds_propres_nets",
    "total_bilan",
    "dettes_lmt",
    "capitaux_permanents",
    "cash_flow_net",
    "cash_flow",
    "actifs_immobilises",
    "capitaux_propres",
    "fonds_de_roulement",
    "immobilisations_nettes",
];

/// Raw accounting line items of one firm-year, all in the same currency unit.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FinancialStatement<T> {
    pub chiffre_affaires: T,
    pub valeur_ajoutee: T,
    pub excedent_brut_exploitation: T,
    pub resultat_exploitation: T,
    pub charges_financieres: T,
    pub resultat_net: T,
    pub fonds_propres_nets: T,
    pub total_bilan: T,
    pub dettes_lmt: T,
    pub capitaux_permanents: T,
    pub cash_flow_net: T,
    pub cash_flow: T,
    pub actifs_immobilises: T,
    pub capitaux_propres: T,
    pub fonds_de_roulement: T,
    pub immobilisations_nettes: T,
}

impl<T: Scalar> FinancialStatement<T> {
    /// Builds a statement from values ordered as [`STATEMENT_FIELDS`].
    pub fn from_array(v: [T; 16]) -> Self {
        Self {
            chiffre_affaires: v[0],
            valeur_ajoutee: v[1],
            excedent_brut_exploitation: v[2],
            resultat_exploitation: v[3],
            charges_financieres: v[4],
            resultat_net: v[5],
            fonds_propres_nets: v[6],
            total_bilan: v[7],
            dettes_lmt: v[8],
            capitaux_permanents: v[9],
            cash_flow_net: v[10],
            cash_flow: v[11],
            actifs_immobilises: v[12],
            capitaux_propres: v[13],
            fonds_de_roulement: v[14],
            immobilisations_nettes: v[15],
        }
    }

    pub fn to_array(&self) -> [T; 16] {
        [
            self.chiffre_affaires,
            self.valeur_ajoutee,
            self.excedent_brut_exploitation,
            self.resultat_exploitation,
            self.charges_financieres,
            self.resultat_net,
            self.fonds_propres_nets,
            self.total_bilan,
            self.dettes_lmt,
            self.capitaux_permanents,
            self.cash_flow_net,
            self.cash_flow,
            self.actifs_immobilises,
            self.capitaux_propres,
            self.fonds_de_roulement,
            self.immobilisations_nettes,
        ]
    }

    /// (numerator, denominator) of one ratio.
    pub fn quotient_terms(&self, code: RatioCode) -> (T, T) {
        use RatioCode::*;
        let ca = self.chiffre_affaires;
        match code {
            R01 => (self.valeur_ajoutee, ca),
            R02 => (self.excedent_brut_exploitation, ca),
            R03 => (self.resultat_exploitation, ca),
            R04 => (self.charges_financieres, ca),
            R05 => (self.resultat_net, ca),
            R06 => (self.resultat_net, self.fonds_propres_nets),
            R07 => (self.fonds_propres_nets, self.total_bilan),
            R08 => (self.dettes_lmt, self.capitaux_permanents),
            R09 => (self.dettes_lmt, self.cash_flow_net),
            R10 => (self.resultat_net, self.total_bilan),
            // total assets are the balance-sheet total
            R11 => (self.actifs_immobilises, self.total_bilan),
            R12 => (self.capitaux_propres, self.capitaux_permanents),
            R13 => (self.cash_flow, ca),
            R14 => (self.fonds_de_roulement, ca),
            R15 => (self.capitaux_permanents, self.immobilisations_nettes),
        }
    }
}

/// Fifteen dimensionless ratios indexed by [`RatioCode`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioVector<T>([T; 15]);

impl<T: Scalar> RatioVector<T> {
    pub fn new(values: [T; 15]) -> Result<Self, DataError> {
        if values.iter().all(|v| v.is_finite()) {
            Ok(Self(values))
        } else {
            Err(DataError::NonFinite("ratio vector".into()))
        }
    }

    pub fn get(&self, code: RatioCode) -> T {
        self.0[code.index()]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    /// Values for a subset of codes, in the order given.
    pub fn select(&self, codes: &[RatioCode]) -> Vec<T> {
        codes.iter().map(|&c| self.get(c)).collect()
    }
}

impl<T> std::ops::Index<RatioCode> for RatioVector<T> {
    type Output = T;

    fn index(&self, code: RatioCode) -> &T {
        &self.0[code as usize]
    }
}

/// Computes R01..R15. A denominator that is exactly zero yields
/// `DivisionByZero` for the first offending code.
pub fn compute_ratios<T: Scalar>(
    statement: &FinancialStatement<T>,
) -> Result<RatioVector<T>, DataError> {
    if statement.to_array().iter().any(|v| !v.is_finite()) {
        return Err(DataError::NonFinite("financial statement".into()));
    }
    let mut out = [T::zero(); 15];
    for code in RatioCode::ALL {
        let (num, den) = statement.quotient_terms(code);
        if den == T::zero() {
            return Err(DataError::DivisionByZero(code));
        }
        out[code.index()] = num / den;
    }
    RatioVector::new(out)
}

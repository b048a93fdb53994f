use std::fmt;

use crate::arrangement::{CharPoly, Factorization, Flat};
use crate::logder::{Derivation, FreenessCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    Terao,
    Ziegler { pivot: usize },
    Yoshinaga { pivot: usize },
    YoshinagaAny,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Criterion::Terao => f.write_str("terao"),
            Criterion::Ziegler { pivot } => write!(f, "ziegler[pivot {pivot}]"),
            Criterion::Yoshinaga { pivot } => write!(f, "yoshinaga[pivot {pivot}]"),
            Criterion::YoshinagaAny => f.write_str("yoshinaga[any]"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// The theorem's prediction matched the independent computation.
    Consistent,
    Inconsistent,
    Free,
    NonFree,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Consistent => "CONSISTENT",
            Outcome::Inconsistent => "INCONSISTENT",
            Outcome::Free => "FREE",
            Outcome::NonFree => "NONFREE",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionWitness {
    Exponents {
        expected: Vec<u32>,
        got: Vec<u32>,
    },
    Charpoly {
        charpoly: CharPoly,
        factorization: Factorization,
    },
    Degrees(Vec<u32>),
    Derivations(Vec<Derivation>),
    Certificate(Box<FreenessCertificate>),
    Localization {
        flat: Flat,
        certificate: Box<FreenessCertificate>,
    },
    Report(Box<CriterionReport>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    pub label: String,
    pub holds: bool,
    pub witness: ConditionWitness,
}

impl Condition {
    pub fn new(label: impl Into<String>, holds: bool, witness: ConditionWitness) -> Self {
        Condition {
            label: label.into(),
            holds,
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionReport {
    pub criterion: Criterion,
    pub outcome: Outcome,
    pub conditions: Vec<Condition>,
    /// Main certificate behind the report: of `A` for the factorization
    /// check, of the restriction for the others.
    pub certificate: Option<Box<FreenessCertificate>>,
    /// Freeness of `A` decided directly, kept for cross-validation.
    pub direct: Option<Box<FreenessCertificate>>,
}

impl CriterionReport {
    pub fn failed(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.holds)
    }

    /// Whether a FREE/NONFREE outcome matches the direct certificate.
    pub fn agrees_with_direct(&self) -> Option<bool> {
        let direct = self.direct.as_ref()?;
        match self.outcome {
            Outcome::Free => Some(direct.is_free()),
            Outcome::NonFree => Some(direct.is_nonfree()),
            _ => None,
        }
    }
}

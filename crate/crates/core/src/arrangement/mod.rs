//! Central arrangements and multiarrangements: the data model, the
//! intersection lattice with its Möbius function, characteristic polynomials,
//! localization and Ziegler restriction.

mod charpoly;
mod family;
mod lattice;
mod restriction;

pub use charpoly::{char_poly, char_poly_whitney, CharPoly, Factorization, WHITNEY_BOUND};
pub use family::{generate_family, random_arrangement, Family, DEFAULT_SEED};
pub use lattice::{intersection_lattice, Flat, IntersectionLattice};
pub use restriction::{ziegler_restriction, ZieglerRestriction};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyalg::{normalize_int_vec, HomogPoly};

/// Canonical defining form of a hyperplane: nonzero, content 1, first
/// nonzero entry positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm(Vec<BigInt>);

impl LinearForm {
    /// Canonicalizes `coeffs`; `None` for the zero vector.
    pub fn new(coeffs: Vec<BigInt>) -> Option<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return None;
        }
        Some(LinearForm(normalize_int_vec(coeffs)))
    }

    pub fn from_i64(coeffs: &[i64]) -> Option<Self> {
        LinearForm::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn to_poly(&self) -> HomogPoly {
        HomogPoly::linear(&self.0)
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// A central arrangement: pairwise non-proportional canonical forms in
/// `dim` variables, in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    forms: Vec<LinearForm>,
    labels: Option<Vec<String>>,
}

impl Arrangement {
    pub fn new(dim: usize, forms: Vec<Vec<BigInt>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut canon: Vec<LinearForm> = Vec::with_capacity(forms.len());
        for (i, f) in forms.into_iter().enumerate() {
            if f.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "hyperplane {i} has {} coefficients, expected {dim}",
                    f.len()
                )));
            }
            let form = LinearForm::new(f).ok_or(Error::ZeroForm(i))?;
            if let Some(j) = canon.iter().position(|g| *g == form) {
                return Err(Error::ProportionalForms(j, i));
            }
            canon.push(form);
        }
        Ok(Arrangement {
            dim,
            forms: canon,
            labels: None,
        })
    }

    pub fn from_i64(dim: usize, forms: &[Vec<i64>]) -> Result<Self> {
        Arrangement::new(
            dim,
            forms
                .iter()
                .map(|f| f.iter().map(|&c| BigInt::from(c)).collect())
                .collect(),
        )
    }

    pub fn empty(dim: usize) -> Result<Self> {
        Arrangement::new(dim, Vec::new())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.forms.len() {
            return Err(Error::LabelLength {
                expected: self.forms.len(),
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn form(&self, i: usize) -> &LinearForm {
        &self.forms[i]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of hyperplane `i`, or `H{i}` when unlabeled.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("H{i}"),
        }
    }

    pub fn check_pivot(&self, pivot: usize) -> Result<()> {
        if pivot >= self.forms.len() {
            return Err(Error::InvalidPivot {
                pivot,
                count: self.forms.len(),
            });
        }
        Ok(())
    }

    /// Rank of the span of the defining forms.
    pub fn rank(&self) -> usize {
        lattice::rank_of(self.forms.iter().map(LinearForm::coeffs), self.dim)
    }

    /// Sub-arrangement on the given hyperplane indices, labels preserved.
    pub fn subarrangement(&self, indices: &[usize]) -> Arrangement {
        Arrangement {
            dim: self.dim,
            forms: indices.iter().map(|&i| self.forms[i].clone()).collect(),
            labels: self
                .labels
                .as_ref()
                .map(|l| indices.iter().map(|&i| l[i].clone()).collect()),
        }
    }

    /// `A_X`: the hyperplanes containing the flat `X`.
    pub fn localization(&self, flat: &Flat) -> Result<Arrangement> {
        if !lattice::is_flat_of(self, flat) {
            return Err(Error::FlatNotInLattice);
        }
        Ok(self.subarrangement(flat.indices()))
    }

    /// `Q = ∏ α_H`.
    pub fn defining_polynomial(&self) -> HomogPoly {
        MultiArrangement::simple(self.clone()).defining_polynomial()
    }
}

/// Multiplicities aligned with hyperplane order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiplicity(Vec<u32>);

impl Multiplicity {
    pub fn new(values: Vec<u32>) -> Self {
        Multiplicity(values)
    }

    pub fn constant_one(n: usize) -> Self {
        Multiplicity(vec![1; n])
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// `|m| = Σ m(H)`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_simple(&self) -> bool {
        self.0.iter().all(|&m| m == 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiArrangement {
    arrangement: Arrangement,
    multiplicity: Multiplicity,
}

impl MultiArrangement {
    pub fn new(arrangement: Arrangement, multiplicity: Multiplicity) -> Result<Self> {
        if multiplicity.0.len() != arrangement.len() {
            return Err(Error::MultiplicityLength {
                expected: arrangement.len(),
                got: multiplicity.0.len(),
            });
        }
        Ok(MultiArrangement {
            arrangement,
            multiplicity,
        })
    }

    /// The arrangement with constant multiplicity one.
    pub fn simple(arrangement: Arrangement) -> Self {
        let n = arrangement.len();
        MultiArrangement {
            arrangement,
            multiplicity: Multiplicity::constant_one(n),
        }
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn multiplicity(&self) -> &Multiplicity {
        &self.multiplicity
    }

    pub fn dim(&self) -> usize {
        self.arrangement.dim
    }

    pub fn total(&self) -> u32 {
        self.multiplicity.total()
    }

    pub fn is_simple(&self) -> bool {
        self.multiplicity.is_simple()
    }

    /// `∏ α_H^{m(H)}`.
    pub fn defining_polynomial(&self) -> HomogPoly {
        let mut q = HomogPoly::one(self.dim());
        for (form, &m) in self.arrangement.forms.iter().zip(&self.multiplicity.0) {
            q = q.mul(&form.to_poly().pow(m)).expect("same ring");
        }
        q
    }
}

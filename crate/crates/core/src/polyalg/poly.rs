use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{format_rational, MonomialBasis, RatMatrix, Rational};
use crate::error::{Error, Result};

/// Exponent vector of a monomial, one entry per variable.
pub type Exponent = Vec<u32>;

/// A homogeneous polynomial over ℚ, stored sparsely.
///
/// Every stored coefficient is nonzero and every exponent sums to `degree`.
/// The zero polynomial is the empty map and may carry any degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomogPoly {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Exponent, Rational>,
}

impl HomogPoly {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        HomogPoly {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = HomogPoly::zero(nvars, 0);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        HomogPoly::constant(nvars, Rational::one())
    }

    /// The coordinate function `z_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        HomogPoly::monomial(e, Rational::one())
    }

    pub fn monomial(exponent: Exponent, c: Rational) -> Self {
        let nvars = exponent.len();
        let degree = exponent.iter().sum();
        let mut p = HomogPoly::zero(nvars, degree);
        if !c.is_zero() {
            p.terms.insert(exponent, c);
        }
        p
    }

    /// The linear form `Σ c_i z_i`.
    pub fn linear(coeffs: &[BigInt]) -> Self {
        let nvars = coeffs.len();
        let mut p = HomogPoly::zero(nvars, 1);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; nvars];
                e[i] = 1;
                p.terms.insert(e, Rational::from_integer(c.clone()));
            }
        }
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents. All exponents must have the same length and sum.
    pub fn from_terms(
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Exponent, Rational)>,
    ) -> Result<Self> {
        let mut p = HomogPoly::zero(nvars, degree);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::VariableMismatch {
                    left: nvars,
                    right: e.len(),
                });
            }
            let d: u32 = e.iter().sum();
            if d != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: d,
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Same polynomial with a different declared degree; only valid for zero.
    pub(crate) fn with_degree(mut self, degree: u32) -> Self {
        debug_assert!(self.is_zero() || self.degree == degree);
        self.degree = degree;
        self
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &HomogPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &HomogPoly) -> Result<HomogPoly> {
        self.check_vars(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HomogPoly) -> Result<HomogPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HomogPoly {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> HomogPoly {
        if c.is_zero() {
            return HomogPoly::zero(self.nvars, self.degree);
        }
        HomogPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &HomogPoly) -> Result<HomogPoly> {
        self.check_vars(other)?;
        let mut out = HomogPoly::zero(self.nvars, self.degree + other.degree);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> HomogPoly {
        let mut out = HomogPoly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self).expect("same ring");
        }
        out
    }

    /// `∂/∂z_i`. The derivative of a constant is the zero polynomial of degree 0.
    pub fn derivative(&self, i: usize) -> HomogPoly {
        let degree = self.degree.saturating_sub(1);
        let mut out = HomogPoly::zero(self.nvars, degree);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c * Rational::from_integer(BigInt::from(e[i])));
        }
        out
    }

    /// Composes with the linear map that sends old variable `z_i` to
    /// `Σ_j T[i][j] u_j`. `T` has one row per old variable and one column per
    /// new variable.
    pub fn substitute_linear(&self, t: &RatMatrix) -> Result<HomogPoly> {
        if t.rows() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "substitution matrix has {} rows, polynomial has {} variables",
                t.rows(),
                self.nvars
            )));
        }
        let new_vars = t.cols();
        let images: Vec<HomogPoly> = (0..self.nvars)
            .map(|i| {
                let mut p = HomogPoly::zero(new_vars, 1);
                for j in 0..new_vars {
                    let mut e = vec![0; new_vars];
                    e[j] = 1;
                    p.add_term(e, t.get(i, j).clone());
                }
                p
            })
            .collect();
        // Cache powers of each image; exponents stay small.
        let mut powers: Vec<Vec<HomogPoly>> = images
            .iter()
            .map(|p| vec![HomogPoly::one(new_vars), p.clone()])
            .collect();
        let mut out = HomogPoly::zero(new_vars, self.degree);
        for (e, c) in &self.terms {
            let mut term = HomogPoly::constant(new_vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&images[i])?;
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][k as usize])?;
            }
            out = out.add(&term.with_degree(self.degree))?;
        }
        Ok(out.with_degree(self.degree))
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder. Uses lexicographic leading terms; for a single divisor a
    /// nonzero remainder appears exactly when it does not divide.
    pub fn div_exact(&self, divisor: &HomogPoly) -> Result<Option<HomogPoly>> {
        self.check_vars(divisor)?;
        let (lead_e, lead_c) = match divisor.leading_term() {
            Some((e, c)) => (e.clone(), c.clone()),
            None => {
                return Ok(if self.is_zero() {
                    Some(self.clone())
                } else {
                    None
                })
            }
        };
        if self.is_zero() {
            let d = self.degree.saturating_sub(divisor.degree);
            return Ok(Some(HomogPoly::zero(self.nvars, d)));
        }
        if self.degree < divisor.degree {
            return Ok(None);
        }
        let qdeg = self.degree - divisor.degree;
        let mut rem = self.clone();
        let mut quot = HomogPoly::zero(self.nvars, qdeg);
        while let Some((e, c)) = rem.leading_term() {
            if e.iter().zip(&lead_e).any(|(a, b)| a < b) {
                return Ok(None);
            }
            let qe: Exponent = e.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            let qc = c / &lead_c;
            let step = HomogPoly::monomial(qe.clone(), qc.clone());
            rem = rem.sub(&step.mul(divisor)?)?.with_degree(self.degree);
            quot.add_term(qe, qc);
        }
        Ok(Some(quot))
    }

    /// Coordinates in the monomial basis of `S_d`.
    pub fn to_vector(&self, basis: &MonomialBasis) -> Vec<Rational> {
        assert_eq!(basis.nvars(), self.nvars);
        let mut v = vec![Rational::zero(); basis.len()];
        if self.is_zero() {
            return v;
        }
        assert_eq!(basis.degree(), self.degree);
        for (e, c) in &self.terms {
            v[basis.index_of(e).expect("exponent in basis")] = c.clone();
        }
        v
    }

    pub fn from_vector(basis: &MonomialBasis, v: &[Rational]) -> HomogPoly {
        let mut p = HomogPoly::zero(basis.nvars(), basis.degree());
        for (e, c) in basis.monomials().iter().zip(v) {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    /// Renders with variable names `names[i]`.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], k)
                    }
                })
                .collect();
            let coeff = format_rational(&abs);
            if mono.is_empty() {
                out.push_str(&coeff);
            } else {
                if !abs.is_one() {
                    out.push_str(&coeff);
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

pub fn default_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("x{i}")).collect()
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&default_names(self.nvars)))
    }
}

impl fmt::Debug for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomogPoly[deg {}]({})", self.degree, self)
    }
}

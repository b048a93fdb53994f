//! Logarithmic derivation modules `D(A, m)`.
//!
//! A derivation `δ = Σ f_j ∂/∂z_j` belongs to `D(A, m)` when `α_H^{m(H)}`
//! divides `δ(α_H)` for every hyperplane. Each graded piece `D(A, m)_d` is
//! computed as the kernel of one linear system in the monomial coefficients
//! of `δ`; divisibility by `α_H^{m(H)}` is expressed as membership in the
//! subspace `α_H^{m(H)} · S_{d - m(H)}` of `S_d`.

mod freeness;
mod generators;
mod piece;
mod restrict;
mod saito;

pub use freeness::{
    freeness, freeness_with, FreenessCertificate, FreenessOptions, NonFreeReason, Verdict, Witness,
};
pub use generators::{d0_generators, minimal_generators, GeneratorRow, GeneratorTable};
pub use piece::{d0_graded_piece, graded_piece, is_member, is_member_by_span, GradedBasis};
pub use restrict::restrict_derivation;
pub use saito::{poly_det, saito_check, saito_matrix, SaitoResult};

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyalg::{default_names, HomogPoly, MonomialBasis, Rational};

/// A homogeneous polynomial vector field `Σ f_j ∂/∂z_j`; all nonzero `f_j`
/// share the degree of the derivation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    nvars: usize,
    degree: u32,
    coeffs: Vec<HomogPoly>,
}

impl Derivation {
    pub fn new(degree: u32, coeffs: Vec<HomogPoly>) -> Result<Self> {
        let nvars = coeffs.len();
        for f in &coeffs {
            if f.nvars() != nvars {
                return Err(Error::VariableMismatch {
                    left: nvars,
                    right: f.nvars(),
                });
            }
            if !f.is_zero() && f.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: f.degree(),
                });
            }
        }
        let coeffs = coeffs.into_iter().map(|f| f.with_degree(degree)).collect();
        Ok(Derivation {
            nvars,
            degree,
            coeffs,
        })
    }

    pub fn zero(nvars: usize, degree: u32) -> Self {
        Derivation {
            nvars,
            degree,
            coeffs: vec![HomogPoly::zero(nvars, degree); nvars],
        }
    }

    /// `∂/∂z_i`.
    pub fn partial(nvars: usize, i: usize) -> Self {
        let mut d = Derivation::zero(nvars, 0);
        d.coeffs[i] = HomogPoly::one(nvars);
        d
    }

    /// `θ_E = Σ z_i ∂/∂z_i`.
    pub fn euler(nvars: usize) -> Self {
        Derivation {
            nvars,
            degree: 1,
            coeffs: (0..nvars).map(|i| HomogPoly::var(nvars, i)).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[HomogPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(HomogPoly::is_zero)
    }

    /// `δ(p) = Σ f_j ∂p/∂z_j`, of degree `deg δ + deg p - 1`.
    pub fn apply(&self, p: &HomogPoly) -> Result<HomogPoly> {
        if p.nvars() != self.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: p.nvars(),
            });
        }
        let degree = (self.degree + p.degree()).saturating_sub(1);
        let mut out = HomogPoly::zero(self.nvars, degree);
        if p.degree() == 0 {
            return Ok(out);
        }
        for (j, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let dp = p.derivative(j);
            if dp.is_zero() {
                continue;
            }
            out = out.add(&f.mul(&dp)?)?;
        }
        Ok(out.with_degree(degree))
    }

    /// `p · δ`.
    pub fn mul_poly(&self, p: &HomogPoly) -> Result<Derivation> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|f| f.mul(p))
            .collect::<Result<Vec<_>>>()?;
        Derivation::new(self.degree + p.degree(), coeffs)
    }

    pub fn add(&self, other: &Derivation) -> Result<Derivation> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Derivation::new(self.degree, coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation {
            nvars: self.nvars,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// Coordinates in `S_d^ℓ`: block `j` holds the coefficients of `f_j`.
    pub fn to_vector(&self, basis: &MonomialBasis) -> Vec<Rational> {
        let mut v = Vec::with_capacity(self.nvars * basis.len());
        for f in &self.coeffs {
            if f.is_zero() {
                v.extend(std::iter::repeat_n(Rational::zero(), basis.len()));
            } else {
                v.extend(f.to_vector(basis));
            }
        }
        v
    }

    pub fn from_vector(basis: &MonomialBasis, v: &[Rational]) -> Derivation {
        let n = basis.len();
        let nvars = basis.nvars();
        assert_eq!(v.len(), nvars * n, "vector length");
        Derivation {
            nvars,
            degree: basis.degree(),
            coeffs: (0..nvars)
                .map(|j| HomogPoly::from_vector(basis, &v[j * n..(j + 1) * n]))
                .collect(),
        }
    }

    pub fn format_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.is_zero())
            .map(|(j, f)| format!("({})∂{}", f.format_with(names), names[j]))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&default_names(self.nvars)))
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation[deg {}]({})", self.degree, self)
    }
}

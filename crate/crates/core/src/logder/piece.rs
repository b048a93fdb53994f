use num_bigint::BigInt;
use num_traits::Zero;

use super::Derivation;
use crate::arrangement::{Arrangement, LinearForm, MultiArrangement};
use crate::error::Result;
use crate::polyalg::matrix::kernel_from_rows;
use crate::polyalg::{in_span, HomogPoly, MonomialBasis, Rational};

/// A 𝕂-basis of one graded piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    pub degree: u32,
    pub elements: Vec<Derivation>,
}

impl GradedBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }
}

/// What a hyperplane demands of `δ(α_H)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Condition {
    /// `α_H^k` divides `δ(α_H)`.
    Divisible(u32),
    /// `δ(α_H) = 0`.
    Vanish,
}

/// Integer functionals on `S_d` whose common kernel is `α^k · S_{d-k}`.
/// For `d < k` the subspace is zero and every coordinate functional appears.
fn annihilator(form: &LinearForm, k: u32, basis: &MonomialBasis) -> Vec<Vec<BigInt>> {
    let d = basis.degree();
    let n = basis.len();
    if k > d {
        return unit_rows(n);
    }
    let ell = basis.nvars();
    let lower = MonomialBasis::new(ell, d - k);
    let power = form.to_poly().pow(k);
    let rows: Vec<Vec<BigInt>> = lower
        .monomials()
        .iter()
        .map(|e| {
            let p = power
                .mul(&HomogPoly::monomial(
                    e.clone(),
                    Rational::from_integer(1.into()),
                ))
                .expect("same ring");
            p.to_vector(basis)
                .into_iter()
                .map(|c| c.to_integer())
                .collect()
        })
        .collect();
    kernel_from_rows(rows, n)
}

fn unit_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            let mut r = vec![BigInt::zero(); n];
            r[i] = 1.into();
            r
        })
        .collect()
}

/// Basis of `{δ of degree d : every condition holds}`.
pub(crate) fn solve_piece(
    ell: usize,
    conditions: &[(LinearForm, Condition)],
    degree: u32,
) -> GradedBasis {
    let basis = MonomialBasis::new(ell, degree);
    let n = basis.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (form, cond) in conditions {
        let functionals = match *cond {
            Condition::Divisible(0) => continue,
            Condition::Divisible(k) => annihilator(form, k, &basis),
            Condition::Vanish => unit_rows(n),
        };
        // δ(α) = Σ_j c_j f_j, so φ(δ(α)) = Σ_j c_j φ(f_j).
        for phi in functionals {
            let mut row = vec![BigInt::zero(); ell * n];
            for (j, c) in form.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (k, p) in phi.iter().enumerate() {
                    if !p.is_zero() {
                        row[j * n + k] = c * p;
                    }
                }
            }
            rows.push(row);
        }
    }
    let kernel = kernel_from_rows(rows, ell * n);
    let elements = kernel
        .into_iter()
        .map(|v| {
            let v: Vec<Rational> = v.into_iter().map(Rational::from_integer).collect();
            Derivation::from_vector(&basis, &v)
        })
        .collect();
    GradedBasis { degree, elements }
}

fn conditions_of(ma: &MultiArrangement) -> Vec<(LinearForm, Condition)> {
    ma.arrangement()
        .forms()
        .iter()
        .zip(ma.multiplicity().values())
        .map(|(f, &m)| (f.clone(), Condition::Divisible(m)))
        .collect()
}

/// `D(A, m)_d`.
pub fn graded_piece(ma: &MultiArrangement, degree: u32) -> GradedBasis {
    solve_piece(ma.dim(), &conditions_of(ma), degree)
}

/// `D_0(A)_d = {δ ∈ D(A)_d : δ(α_pivot) = 0}`.
pub fn d0_graded_piece(a: &Arrangement, pivot: usize, degree: u32) -> Result<GradedBasis> {
    a.check_pivot(pivot)?;
    let conditions: Vec<(LinearForm, Condition)> = a
        .forms()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let c = if i == pivot {
                Condition::Vanish
            } else {
                Condition::Divisible(1)
            };
            (f.clone(), c)
        })
        .collect();
    Ok(solve_piece(a.dim(), &conditions, degree))
}

/// Membership in `D(A, m)` by exact polynomial division.
pub fn is_member(delta: &Derivation, ma: &MultiArrangement) -> Result<bool> {
    for (form, &m) in ma
        .arrangement()
        .forms()
        .iter()
        .zip(ma.multiplicity().values())
    {
        if m == 0 {
            continue;
        }
        let alpha = form.to_poly();
        let image = delta.apply(&alpha)?;
        if image.div_exact(&alpha.pow(m))?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership in `D(A, m)` by linear algebra: `δ(α_H)` must lie in the span
/// of `{α_H^m · u : u a monomial of degree d - m}`.
pub fn is_member_by_span(delta: &Derivation, ma: &MultiArrangement) -> Result<bool> {
    let ell = ma.dim();
    for (form, &m) in ma
        .arrangement()
        .forms()
        .iter()
        .zip(ma.multiplicity().values())
    {
        if m == 0 {
            continue;
        }
        let alpha = form.to_poly();
        let image = delta.apply(&alpha)?;
        if image.is_zero() {
            continue;
        }
        let d = image.degree();
        if d < m {
            return Ok(false);
        }
        let target = MonomialBasis::new(ell, d);
        let power = alpha.pow(m);
        let spanning: Vec<Vec<Rational>> = MonomialBasis::new(ell, d - m)
            .monomials()
            .iter()
            .map(|e| {
                power
                    .mul(&HomogPoly::monomial(
                        e.clone(),
                        Rational::from_integer(1.into()),
                    ))
                    .map(|p| p.to_vector(&target))
            })
            .collect::<Result<_>>()?;
        if in_span(&image.to_vector(&target), &spanning)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

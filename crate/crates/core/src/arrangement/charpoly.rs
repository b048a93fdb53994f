use std::fmt;

use serde::{Deserialize, Serialize};

use super::lattice::rank_of;
use super::{intersection_lattice, Arrangement, LinearForm};
use crate::error::{Error, Result};

/// Largest arrangement accepted by the subset-expansion oracle by default.
pub const WHITNEY_BOUND: usize = 14;

/// Monic integer polynomial in `t`; `coeffs[k]` is the coefficient of `t^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPoly {
    coeffs: Vec<i64>,
}

impl CharPoly {
    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        CharPoly { coeffs }
    }

    /// `∏ (t - r)` over the given roots.
    pub fn from_roots(roots: &[i64]) -> Self {
        let mut coeffs = vec![1i64];
        for &r in roots {
            let mut next = vec![0i64; coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= r * c;
            }
            coeffs = next;
        }
        CharPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    /// Splits off every linear factor `t - r` with `r` a nonnegative integer,
    /// repeated with multiplicity.
    pub fn factor(&self) -> Factorization {
        let mut rest = self.coeffs.clone();
        let mut roots = Vec::new();
        // A nonnegative integer root divides the lowest nonzero coefficient
        // or is zero, so it is bounded by that coefficient's absolute value.
        loop {
            if rest.len() <= 1 {
                break;
            }
            if rest[0] == 0 {
                roots.push(0);
                rest.remove(0);
                continue;
            }
            let bound = rest[0].unsigned_abs() as i64;
            let found = (1..=bound).find(|&r| eval_slice(&rest, r) == 0);
            match found {
                Some(r) => {
                    rest = divide_linear(&rest, r);
                    roots.push(r);
                }
                None => break,
            }
        }
        roots.sort_unstable();
        Factorization {
            roots,
            cofactor: rest,
        }
    }

    /// Expanded form, e.g. `t^3 - 3t^2 + 2t`.
    pub fn to_expanded_string(&self) -> String {
        format_poly(&self.coeffs)
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expanded_string())
    }
}

fn eval_slice(c: &[i64], t: i64) -> i64 {
    c.iter().rev().fold(0i64, |acc, &x| acc * t + x)
}

/// Synthetic division by `t - r`; caller guarantees `r` is a root.
fn divide_linear(c: &[i64], r: i64) -> Vec<i64> {
    let n = c.len() - 1;
    let mut q = vec![0i64; n];
    let mut carry = 0i64;
    for k in (0..n).rev() {
        carry = c[k + 1] + carry * r;
        q[k] = carry;
    }
    q
}

fn format_poly(coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let abs = c.unsigned_abs();
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        if abs != 1 || k == 0 {
            out.push_str(&abs.to_string());
        }
        match k {
            0 => {}
            1 => out.push('t'),
            _ => out.push_str(&format!("t^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Linear factors over the nonnegative integers and the remaining cofactor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    /// Nonnegative integer roots, ascending, with multiplicity.
    pub roots: Vec<i64>,
    /// Coefficients (ascending powers) of what is left; `[1]` when split.
    pub cofactor: Vec<i64>,
}

impl Factorization {
    pub fn is_split(&self) -> bool {
        self.cofactor.len() == 1
    }
}

impl fmt::Display for Factorization {
    /// `t(t-1)(t-2)`, `(t-1)^3` or `(t-1)(t^2-3t+3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let mut k = 0;
        while k < self.roots.len() {
            let r = self.roots[k];
            let run = self.roots[k..].iter().take_while(|&&x| x == r).count();
            out.push_str(&if r == 0 {
                "t".to_string()
            } else {
                format!("(t-{r})")
            });
            if run > 1 {
                out.push_str(&format!("^{run}"));
            }
            k += run;
        }
        if !self.is_split() {
            out.push_str(&format!(
                "({})",
                format_poly(&self.cofactor).replace(' ', "")
            ));
        } else if out.is_empty() {
            out.push('1');
        }
        f.write_str(&out)
    }
}

/// `χ(A, t) = Σ_{X ∈ L_A} μ(X) t^{dim X}`.
pub fn char_poly(a: &Arrangement) -> CharPoly {
    let lattice = intersection_lattice(a);
    let mut coeffs = vec![0i64; a.dim() + 1];
    for (flat, &mu) in lattice.flats().iter().zip(lattice.mobius_values()) {
        coeffs[flat.dim()] += mu;
    }
    CharPoly { coeffs }
}

/// Independent route: `Σ_{B ⊆ A} (-1)^{|B|} t^{ℓ - rank B}` over all subsets.
pub fn char_poly_whitney(a: &Arrangement, bound: usize) -> Result<CharPoly> {
    let n = a.len();
    if n > bound {
        return Err(Error::OracleBound { bound, got: n });
    }
    let ell = a.dim();
    let mut coeffs = vec![0i64; ell + 1];
    for mask in 0u32..(1u32 << n) {
        let rank = rank_of(
            (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| a.form(i))
                .map(LinearForm::coeffs),
            ell,
        );
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        coeffs[ell - rank] += sign;
    }
    Ok(CharPoly { coeffs })
}

//! Exact arithmetic: rationals, homogeneous polynomials and dense rational
//! matrices.
//!
//! Scalars live in ℚ. Every lattice, dimension and freeness computation for an
//! arrangement with rational coefficients is unchanged by passing to the
//! algebraic closure, so working over ℚ loses nothing for integer input.

pub(crate) mod matrix;
mod modular;
mod monomial;
mod poly;

pub use matrix::{in_span, EchelonSpace, RatMatrix};
pub use monomial::{binomial, dim_homogeneous, MonomialBasis};
pub use poly::{default_names, Exponent, HomogPoly};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders `p/q`, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Scales a rational vector to an integer vector with content 1 whose first
/// nonzero entry is positive. The zero vector stays zero.
pub fn normalize_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    normalize_int_vec(ints)
}

/// Divides out the content and fixes the sign of the first nonzero entry.
pub fn normalize_int_vec(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = content(&v);
    if g.is_zero() {
        return v;
    }
    let flip = v
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x = &*x / &g;
        if flip {
            *x = -&*x;
        }
    }
    v
}

pub(crate) fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_clears_denominators_and_sign() {
        let v = vec![rat(0), rat_frac(-1, 2), rat_frac(3, 4)];
        let n = normalize_integer_vector(&v);
        assert_eq!(n, vec![BigInt::from(0), BigInt::from(2), BigInt::from(-3)]);
    }

    #[test]
    fn rational_text_round_trip() {
        for r in [rat(0), rat(-7), rat_frac(5, -15), rat_frac(22, 7)] {
            assert_eq!(parse_rational(&format_rational(&r)), Some(r));
        }
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}

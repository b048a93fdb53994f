use num_traits::Zero;

use super::piece::is_member;
use super::Derivation;
use crate::arrangement::MultiArrangement;
use crate::error::{Error, Result};
use crate::polyalg::{HomogPoly, Rational};

/// Row `i` holds the coefficients of `δ_i`, i.e. `M[i][j] = δ_i(z_j)`.
pub fn saito_matrix(derivs: &[Derivation], ell: usize) -> Result<Vec<Vec<HomogPoly>>> {
    if derivs.len() != ell {
        return Err(Error::CountMismatch {
            expected: ell,
            got: derivs.len(),
        });
    }
    derivs
        .iter()
        .map(|d| {
            if d.nvars() != ell {
                return Err(Error::VariableMismatch {
                    left: ell,
                    right: d.nvars(),
                });
            }
            Ok(d.coeffs().to_vec())
        })
        .collect()
}

/// Determinant of a square polynomial matrix by cofactor expansion along the
/// first row. Entries of row `i` must share a degree.
pub fn poly_det(m: &[Vec<HomogPoly>]) -> Result<HomogPoly> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: m.first().map_or(0, Vec::len),
        });
    }
    if n == 0 {
        return Err(Error::DimensionMismatch("empty matrix".into()));
    }
    let nvars = m[0][0].nvars();
    let cols: Vec<usize> = (0..n).collect();
    det_rec(m, 0, &cols, nvars)
}

fn det_rec(m: &[Vec<HomogPoly>], row: usize, cols: &[usize], nvars: usize) -> Result<HomogPoly> {
    let degree: u32 = m[row..].iter().map(|r| r[cols[0]].degree()).sum();
    if cols.len() == 1 {
        return Ok(m[row][cols[0]].clone());
    }
    let mut acc = HomogPoly::zero(nvars, degree);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(m, row + 1, &rest, nvars)?;
        if minor.is_zero() {
            continue;
        }
        let term = entry.mul(&minor)?;
        acc = if k % 2 == 0 {
            acc.add(&term)?
        } else {
            acc.sub(&term)?
        };
    }
    Ok(acc)
}

/// Outcome of Saito's criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaitoResult {
    pub is_basis: bool,
    /// `c` with `det = c · ∏ α_H^{m(H)}`, or zero when not a basis.
    pub constant: Rational,
    pub determinant: HomogPoly,
}

/// Checks whether `ℓ` members of `D(A, m)` form a basis: their Saito
/// determinant must be a nonzero constant multiple of `∏ α_H^{m(H)}`.
pub fn saito_check(derivs: &[Derivation], ma: &MultiArrangement) -> Result<SaitoResult> {
    let ell = ma.dim();
    let matrix = saito_matrix(derivs, ell)?;
    for (i, d) in derivs.iter().enumerate() {
        if !is_member(d, ma)? {
            return Err(Error::NotAMember(i));
        }
    }
    let determinant = poly_det(&matrix)?;
    let q = ma.defining_polynomial();
    let constant = if determinant.is_zero() || determinant.degree() != q.degree() {
        Rational::zero()
    } else {
        match determinant.div_exact(&q)? {
            Some(c) if c.degree() == 0 && !c.is_zero() => c.coeff(&vec![0; ell]),
            _ => Rational::zero(),
        }
    };
    Ok(SaitoResult {
        is_basis: !constant.is_zero(),
        constant,
        determinant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{generate_family, Family, Multiplicity};
    use crate::polyalg::{rat, RatMatrix};

    fn braid3() -> MultiArrangement {
        MultiArrangement::simple(generate_family(Family::Braid, &[3], None).unwrap())
    }

    fn vandermonde() -> Vec<Derivation> {
        let one = HomogPoly::one(3);
        let x: Vec<HomogPoly> = (0..3).map(|i| HomogPoly::var(3, i)).collect();
        vec![
            Derivation::new(0, vec![one.clone(), one.clone(), one]).unwrap(),
            Derivation::euler(3),
            Derivation::new(2, x.iter().map(|v| v.pow(2)).collect()).unwrap(),
        ]
    }

    #[test]
    fn boolean_diagonal() {
        let ma = MultiArrangement::simple(generate_family(Family::Boolean, &[3], None).unwrap());
        let basis: Vec<Derivation> = (0..3)
            .map(|i| {
                Derivation::partial(3, i)
                    .mul_poly(&HomogPoly::var(3, i))
                    .unwrap()
            })
            .collect();
        let m = saito_matrix(&basis, 3).unwrap();
        assert_eq!(m[1][1], HomogPoly::var(3, 1));
        assert!(m[0][1].is_zero());
        let r = saito_check(&basis, &ma).unwrap();
        assert!(r.is_basis);
        assert_eq!(r.constant, rat(1));
        assert_eq!(r.determinant.to_string(), "x1*x2*x3");
    }

    #[test]
    fn braid_vandermonde() {
        let r = saito_check(&vandermonde(), &braid3()).unwrap();
        assert!(r.is_basis);
        // det = (x2-x1)(x3-x1)(x3-x2) and Q = (x1-x2)(x1-x3)(x2-x3)
        assert_eq!(r.constant, rat(-1));
    }

    #[test]
    fn dependent_rows() {
        let mut b = vandermonde();
        b[2] = b[1].mul_poly(&HomogPoly::var(3, 0)).unwrap();
        let r = saito_check(&b, &braid3()).unwrap();
        assert!(!r.is_basis);
        assert!(r.determinant.is_zero());
        assert_eq!(r.constant, rat(0));
    }

    #[test]
    fn zero_row_and_errors() {
        let mut b = vandermonde();
        b[0] = Derivation::zero(3, 0);
        let m = saito_matrix(&b, 3).unwrap();
        assert!(m[0].iter().all(HomogPoly::is_zero));
        assert!(matches!(
            saito_matrix(&b[..2], 3),
            Err(Error::CountMismatch {
                expected: 3,
                got: 2
            })
        ));
        let mut bad = vandermonde();
        bad[0] = Derivation::partial(3, 0);
        assert_eq!(saito_check(&bad, &braid3()), Err(Error::NotAMember(0)));
    }

    #[test]
    fn multiplicity_diagonal() {
        let ma = MultiArrangement::new(
            generate_family(Family::Boolean, &[3], None).unwrap(),
            Multiplicity::new(vec![2, 1, 1]),
        )
        .unwrap();
        let b: Vec<Derivation> = (0..3)
            .map(|i| {
                let p = HomogPoly::var(3, i).pow(if i == 0 { 2 } else { 1 });
                Derivation::partial(3, i).mul_poly(&p).unwrap()
            })
            .collect();
        let r = saito_check(&b, &ma).unwrap();
        assert!(r.is_basis);
        assert_eq!(r.determinant.to_string(), "x1^2*x2*x3");
    }

    #[test]
    fn constant_matrix_det_matches_scalar_det() {
        let ints = [[2i64, -1, 0], [1, 3, 1], [0, 4, -2]];
        let m: Vec<Vec<HomogPoly>> = ints
            .iter()
            .map(|r| r.iter().map(|&x| HomogPoly::constant(2, rat(x))).collect())
            .collect();
        let scalar = RatMatrix::from_i64(&ints.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
            .det()
            .unwrap();
        assert_eq!(poly_det(&m).unwrap().coeff(&[0, 0]), scalar);
    }
}

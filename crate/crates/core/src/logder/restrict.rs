use num_traits::Zero;

use super::Derivation;
use crate::arrangement::ZieglerRestriction;
use crate::error::{Error, Result};
use crate::polyalg::{HomogPoly, RatMatrix};

/// Restricts a derivation tangent to `H₀` (so `δ(α_{H₀}) = 0`) to the chart
/// coordinates of `H₀`.
///
/// With `x = T u`, the vector `f(T u)` lies in the column space of `T`, so
/// `g = (TᵀT)⁻¹ Tᵀ f(T u)` is the unique solution of `T g = f(T u)`.
pub fn restrict_derivation(delta: &Derivation, z: &ZieglerRestriction) -> Result<Derivation> {
    let ell = z.chart.rows();
    if delta.nvars() != ell {
        return Err(Error::VariableMismatch {
            left: ell,
            right: delta.nvars(),
        });
    }
    if !delta.apply(&z.pivot_form.to_poly())?.is_zero() {
        return Err(Error::NotTangent);
    }
    let t = &z.chart;
    let tt = t.transpose();
    let gram_inv = tt
        .mul(t)?
        .inverse()?
        .ok_or_else(|| Error::Internal("chart has dependent columns".into()))?;
    let left = gram_inv.mul(&tt)?;

    let pulled = delta
        .coeffs()
        .iter()
        .map(|f| f.substitute_linear(t))
        .collect::<Result<Vec<_>>>()?;
    let coeffs = combine(&left, &pulled, ell - 1, delta.degree())?;
    let back = combine(t, &coeffs, ell - 1, delta.degree())?;
    if back != pulled {
        return Err(Error::Internal(
            "restricted derivation does not reproduce the tangent field".into(),
        ));
    }
    Derivation::new(delta.degree(), coeffs)
}

/// Row `i` of the result is `Σ_k m[i][k] · polys[k]`.
fn combine(
    m: &RatMatrix,
    polys: &[HomogPoly],
    nvars: usize,
    degree: u32,
) -> Result<Vec<HomogPoly>> {
    (0..m.rows())
        .map(|i| {
            polys
                .iter()
                .enumerate()
                .filter(|(k, p)| !m.get(i, *k).is_zero() && !p.is_zero())
                .try_fold(HomogPoly::zero(nvars, degree), |acc, (k, p)| {
                    acc.add(&p.scale(m.get(i, k)))
                })
                .map(|p| p.with_degree(degree))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{generate_family, ziegler_restriction, Family};
    use crate::logder::{d0_generators, is_member};

    #[test]
    fn euler_is_not_tangent() {
        let a = generate_family(Family::Boolean, &[2], None).unwrap();
        let z = ziegler_restriction(&a, 0).unwrap();
        assert_eq!(
            restrict_derivation(&Derivation::euler(2), &z),
            Err(Error::NotTangent)
        );
    }

    #[test]
    fn boolean_plane() {
        let a = generate_family(Family::Boolean, &[2], None).unwrap();
        let z = ziegler_restriction(&a, 0).unwrap();
        let y = HomogPoly::var(2, 1);
        let d = Derivation::new(1, vec![HomogPoly::zero(2, 1), y]).unwrap();
        let r = restrict_derivation(&d, &z).unwrap();
        assert_eq!(r, Derivation::euler(1));
        let zero = restrict_derivation(&Derivation::zero(2, 3), &z).unwrap();
        assert!(zero.is_zero());
        assert_eq!(zero.nvars(), 1);
    }

    #[test]
    fn braid_generators_land_in_restriction() {
        let a = generate_family(Family::Braid, &[4], None).unwrap();
        for pivot in [0, 3, 5] {
            let z = ziegler_restriction(&a, pivot).unwrap();
            let table = d0_generators(&a, pivot, 6, Some(3)).unwrap();
            for g in table.generators() {
                let r = restrict_derivation(&g, &z).unwrap();
                assert!(is_member(&r, &z.multi).unwrap(), "{g} -> {r}");
            }
        }
    }
}

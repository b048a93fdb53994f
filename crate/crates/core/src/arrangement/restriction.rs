use num_bigint::BigInt;
use num_traits::Zero;

use super::{Arrangement, LinearForm, MultiArrangement, Multiplicity};
use crate::error::{Error, Result};
use crate::polyalg::RatMatrix;

/// Ziegler restriction `(A^{H₀}, m̄)` together with the chart used to
/// coordinatize `H₀`.
#[derive(Debug, Clone)]
pub struct ZieglerRestriction {
    pub pivot: usize,
    pub pivot_form: LinearForm,
    /// Multiarrangement in `ℓ - 1` coordinates on `H₀`.
    pub multi: MultiArrangement,
    /// `ℓ × (ℓ-1)` inclusion `H₀ → V`: columns are the chosen basis of `H₀`,
    /// so `x = chart · u`.
    pub chart: RatMatrix,
    /// Original hyperplane indices restricting to each restricted hyperplane.
    pub groups: Vec<Vec<usize>>,
}

/// Restricts every `K ≠ H₀` to `H₀ = ker α_pivot`, merges restrictions that
/// coincide and counts them: `m̄(X) = #{K : K ∩ H₀ = X}`.
pub fn ziegler_restriction(a: &Arrangement, pivot: usize) -> Result<ZieglerRestriction> {
    a.check_pivot(pivot)?;
    let ell = a.dim();
    if ell < 2 {
        return Err(Error::DimensionMismatch(
            "restriction needs ambient dimension at least 2".into(),
        ));
    }
    let pivot_row = RatMatrix::from_bigint_rows(ell, &[a.form(pivot).coeffs().to_vec()])?;
    let h0_basis = pivot_row.kernel_basis_int();
    debug_assert_eq!(h0_basis.len(), ell - 1);
    let mut chart = RatMatrix::zeros(ell, ell - 1);
    for (j, v) in h0_basis.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            chart.set(i, j, x.clone().into());
        }
    }

    let mut forms: Vec<LinearForm> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for k in (0..a.len()).filter(|&k| k != pivot) {
        // α_K(chart · u) = Σ_j (Σ_i α_K[i] chart[i][j]) u_j
        let restricted: Vec<BigInt> = h0_basis
            .iter()
            .map(|col| col.iter().zip(a.form(k).coeffs()).map(|(c, x)| c * x).sum())
            .collect();
        if restricted.iter().all(Zero::is_zero) {
            return Err(Error::Internal(format!(
                "hyperplane {k} restricts to zero on pivot {pivot}"
            )));
        }
        let form = LinearForm::new(restricted).expect("nonzero");
        match forms.iter().position(|f| *f == form) {
            Some(g) => groups[g].push(k),
            None => {
                forms.push(form);
                groups.push(vec![k]);
            }
        }
    }
    let labels = a.labels().map(|l| {
        groups
            .iter()
            .map(|g| {
                g.iter()
                    .map(|&k| l[k].as_str())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
    });
    let mut restricted =
        Arrangement::new(ell - 1, forms.iter().map(|f| f.coeffs().to_vec()).collect())?;
    if let Some(labels) = labels {
        restricted = restricted.with_labels(labels)?;
    }
    let multiplicity = Multiplicity::new(groups.iter().map(|g| g.len() as u32).collect());
    Ok(ZieglerRestriction {
        pivot,
        pivot_form: a.form(pivot).clone(),
        multi: MultiArrangement::new(restricted, multiplicity)?,
        chart,
        groups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{generate_family, Family};

    #[test]
    fn boolean_three() {
        let a = generate_family(Family::Boolean, &[3], None).unwrap();
        let z = ziegler_restriction(&a, 0).unwrap();
        assert_eq!(z.multi.dim(), 2);
        assert_eq!(z.multi.arrangement().len(), 2);
        assert_eq!(z.multi.multiplicity().values(), &[1, 1]);
        assert_eq!(z.groups, vec![vec![1], vec![2]]);
    }

    #[test]
    fn braid_three_merges() {
        let a = generate_family(Family::Braid, &[3], None).unwrap();
        for pivot in 0..3 {
            let z = ziegler_restriction(&a, pivot).unwrap();
            assert_eq!(z.multi.arrangement().len(), 1);
            assert_eq!(z.multi.multiplicity().values(), &[2]);
        }
    }

    #[test]
    fn generic_four_space() {
        let a = Arrangement::from_i64(
            4,
            &[
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 0, 0, 1],
                vec![1, 1, 1, 1],
            ],
        )
        .unwrap();
        let z = ziegler_restriction(&a, 0).unwrap();
        assert_eq!(z.multi.arrangement().len(), 4);
        assert_eq!(z.multi.multiplicity().values(), &[1, 1, 1, 1]);
    }

    #[test]
    fn chart_lands_in_pivot() {
        let a = generate_family(Family::Braid, &[4], None).unwrap();
        let z = ziegler_restriction(&a, 2).unwrap();
        let alpha = a.form(2).to_poly();
        let back = alpha.substitute_linear(&z.chart).unwrap();
        assert!(back.is_zero());
        assert_eq!(z.multi.total(), a.len() as u32 - 1);
    }

    #[test]
    fn invalid_pivot() {
        let a = generate_family(Family::Boolean, &[2], None).unwrap();
        assert!(matches!(
            ziegler_restriction(&a, 2),
            Err(Error::InvalidPivot { pivot: 2, count: 2 })
        ));
    }
}

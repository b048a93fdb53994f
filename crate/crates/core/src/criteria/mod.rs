//! Theorem-level checks built on the freeness decision procedure: the
//! factorization of `χ` for free arrangements, Ziegler's restriction theorem
//! and the hyperplane-section criterion for freeness in dimension `ℓ ≥ 4`.

mod report;
mod yoshinaga;

pub use report::{Condition, ConditionWitness, Criterion, CriterionReport, Outcome};
pub use yoshinaga::{
    flats_in_pivot, yoshinaga_any, yoshinaga_any_jobs, yoshinaga_check, YOSHINAGA_MIN_DIM,
};

use crate::arrangement::{char_poly, ziegler_restriction, Arrangement, CharPoly, MultiArrangement};
use crate::error::{Error, Result};
use crate::logder::{
    d0_generators, freeness, restrict_derivation, saito_check, Derivation, FreenessCertificate,
};

/// Checks `χ(A, t) = ∏ (t - e_i)` whenever `A` is free. A mismatch is an
/// implementation fault and surfaces as [`Error::Internal`].
pub fn terao_check(a: &Arrangement) -> Result<CriterionReport> {
    let cert = freeness(&MultiArrangement::simple(a.clone()))?;
    terao_from(a, cert)
}

pub(crate) fn terao_from(a: &Arrangement, cert: FreenessCertificate) -> Result<CriterionReport> {
    let chi = cert.charpoly.clone().unwrap_or_else(|| char_poly(a));
    let factorization = chi.factor();
    let mut conditions = Vec::new();
    if let Some(exponents) = cert.exponents() {
        let roots: Vec<i64> = exponents.iter().map(|&e| e as i64).collect();
        let product = CharPoly::from_roots(&roots);
        if product != chi {
            return Err(Error::Internal(format!(
                "free with exponents {exponents:?} but χ = {}",
                chi.to_expanded_string()
            )));
        }
        conditions.push(Condition::new(
            "χ = ∏(t - e_i)",
            true,
            ConditionWitness::Exponents {
                expected: exponents.to_vec(),
                got: factorization.roots.iter().map(|&r| r as u32).collect(),
            },
        ));
    } else {
        conditions.push(Condition::new(
            "χ splits over ℤ≥0",
            factorization.is_split(),
            ConditionWitness::Charpoly {
                charpoly: chi.clone(),
                factorization,
            },
        ));
    }
    Ok(CriterionReport {
        criterion: Criterion::Terao,
        outcome: Outcome::Consistent,
        conditions,
        certificate: Some(Box::new(cert)),
        direct: None,
    })
}

/// Ziegler's restriction theorem at one pivot.
///
/// Requires `A` free with `1` among its exponents. Checks that the
/// restriction `(A^{H₀}, m̄)` is free with the remaining exponents, and that
/// restricting a basis `{θ_E} ∪ D_0` generators gives a basis of
/// `D(A^{H₀}, m̄)`.
pub fn ziegler_check(a: &Arrangement, pivot: usize) -> Result<CriterionReport> {
    a.check_pivot(pivot)?;
    let cert = freeness(&MultiArrangement::simple(a.clone()))?;
    ziegler_from(a, pivot, &cert)
}

pub(crate) fn ziegler_from(
    a: &Arrangement,
    pivot: usize,
    cert: &FreenessCertificate,
) -> Result<CriterionReport> {
    let ell = a.dim();
    if ell < 2 {
        return Err(Error::HypothesisViolated(
            "restriction needs ambient dimension at least 2".into(),
        ));
    }
    let exponents = cert
        .exponents()
        .ok_or_else(|| Error::HypothesisViolated("arrangement is not free".into()))?;
    let Some(one) = exponents.iter().position(|&e| e == 1) else {
        return Err(Error::HypothesisViolated(format!(
            "exponents {exponents:?} do not contain 1"
        )));
    };
    let mut expected = exponents.to_vec();
    expected.remove(one);

    let z = ziegler_restriction(a, pivot)?;
    let restricted = freeness(&z.multi)?;
    let got = restricted
        .exponents()
        .map(<[u32]>::to_vec)
        .unwrap_or_default();
    let mut conditions = vec![Condition::new(
        "restriction free with remaining exponents",
        restricted.is_free() && got == expected,
        ConditionWitness::Exponents { expected, got },
    )];

    let d0 = d0_generators(a, pivot, a.len() as u32, Some(ell - 1))?;
    let d0_basis = d0.generators();
    let mut full: Vec<Derivation> = vec![Derivation::euler(ell)];
    full.extend(d0_basis.iter().cloned());
    let full_ok = d0_basis.len() == ell - 1
        && saito_check(&full, &MultiArrangement::simple(a.clone()))?.is_basis;
    conditions.push(Condition::new(
        "θ_E with D_0 generators is a basis",
        full_ok,
        ConditionWitness::Degrees(d0.degrees()),
    ));

    let images = d0_basis
        .iter()
        .map(|d| restrict_derivation(d, &z))
        .collect::<Result<Vec<_>>>()?;
    let restricted_ok = images.len() == ell - 1 && saito_check(&images, &z.multi)?.is_basis;
    conditions.push(Condition::new(
        "restricted D_0 generators form a basis",
        restricted_ok,
        ConditionWitness::Derivations(images),
    ));

    let outcome = if conditions.iter().all(|c| c.holds) {
        Outcome::Consistent
    } else {
        Outcome::Inconsistent
    };
    Ok(CriterionReport {
        criterion: Criterion::Ziegler { pivot },
        outcome,
        conditions,
        certificate: Some(Box::new(restricted)),
        direct: None,
    })
}

use std::collections::BTreeMap;
use std::thread;

use super::report::{Condition, ConditionWitness, Criterion, CriterionReport, Outcome};
use crate::arrangement::{
    intersection_lattice, ziegler_restriction, Arrangement, Flat, MultiArrangement,
};
use crate::error::{Error, Result};
use crate::logder::{freeness, FreenessCertificate};

/// Smallest ambient dimension for which the criterion is applied. In
/// dimension 3 both conditions hold for every arrangement, free or not.
pub const YOSHINAGA_MIN_DIM: usize = 4;

/// Flats `X ∈ L_A` with `X ⊆ H₀` and `dim X ≥ 1`.
///
/// For `x ∈ H₀ ∖ {0}` the localization `A_x` equals `A_X` for the flat
/// `X = ∩_{H ∋ x} H`, which lies in `H₀` and contains `x`; conversely a
/// generic point of any such flat realizes it. So freeness of `A_x` for all
/// points of `H₀ ∖ {0}` is freeness of `A_X` for these finitely many flats.
pub fn flats_in_pivot(a: &Arrangement, pivot: usize) -> Result<Vec<Flat>> {
    a.check_pivot(pivot)?;
    Ok(intersection_lattice(a)
        .flats()
        .iter()
        .filter(|f| f.dim() >= 1 && f.indices().binary_search(&pivot).is_ok())
        .cloned()
        .collect())
}

fn gate(a: &Arrangement) -> Result<()> {
    if a.dim() < YOSHINAGA_MIN_DIM {
        return Err(Error::DimensionGate(a.dim()));
    }
    Ok(())
}

fn localization_freeness(a: &Arrangement, flat: &Flat) -> Result<FreenessCertificate> {
    freeness(&MultiArrangement::simple(a.localization(flat)?))
}

/// The criterion at one pivot `H₀`: (a) the Ziegler restriction is free and
/// (b) every localization along a flat inside `H₀` is free.
pub fn yoshinaga_check(a: &Arrangement, pivot: usize) -> Result<CriterionReport> {
    gate(a)?;
    let flats = flats_in_pivot(a, pivot)?;
    let local = flats
        .iter()
        .map(|f| Ok((f.indices().to_vec(), localization_freeness(a, f)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let direct = freeness(&MultiArrangement::simple(a.clone()))?;
    pivot_report(a, pivot, &flats, &local, Some(direct))
}

fn pivot_report(
    a: &Arrangement,
    pivot: usize,
    flats: &[Flat],
    local: &BTreeMap<Vec<usize>, FreenessCertificate>,
    direct: Option<FreenessCertificate>,
) -> Result<CriterionReport> {
    let z = ziegler_restriction(a, pivot)?;
    let restricted = freeness(&z.multi)?;
    let mut conditions = vec![Condition::new(
        "(a) Ziegler restriction is free",
        restricted.is_free(),
        ConditionWitness::Certificate(Box::new(restricted.clone())),
    )];
    for flat in flats {
        let cert = local
            .get(flat.indices())
            .ok_or_else(|| Error::Internal("missing localization".into()))?;
        conditions.push(Condition::new(
            format!("(b) localization at {:?} is free", flat.indices()),
            cert.is_free(),
            ConditionWitness::Localization {
                flat: flat.clone(),
                certificate: Box::new(cert.clone()),
            },
        ));
    }
    let outcome = if conditions.iter().all(|c| c.holds) {
        Outcome::Free
    } else {
        Outcome::NonFree
    };
    Ok(CriterionReport {
        criterion: Criterion::Yoshinaga { pivot },
        outcome,
        conditions,
        certificate: Some(Box::new(restricted)),
        direct: direct.map(Box::new),
    })
}

/// Runs the criterion at every pivot; FREE iff some pivot passes.
pub fn yoshinaga_any(a: &Arrangement) -> Result<CriterionReport> {
    yoshinaga_any_jobs(a, 1)
}

/// As [`yoshinaga_any`], spreading independent checks over `jobs` threads.
/// The report does not depend on `jobs`.
pub fn yoshinaga_any_jobs(a: &Arrangement, jobs: usize) -> Result<CriterionReport> {
    gate(a)?;
    let lattice = intersection_lattice(a);
    let needed: Vec<&Flat> = lattice
        .flats()
        .iter()
        .filter(|f| f.dim() >= 1 && !f.indices().is_empty())
        .collect();
    let local: BTreeMap<Vec<usize>, FreenessCertificate> =
        parallel_map(&needed, jobs, |f| localization_freeness(a, f))?
            .into_iter()
            .zip(&needed)
            .map(|(c, f)| (f.indices().to_vec(), c))
            .collect();

    let pivots: Vec<usize> = (0..a.len()).collect();
    let reports = parallel_map(&pivots, jobs, |&pivot| {
        let flats: Vec<Flat> = needed
            .iter()
            .filter(|f| f.indices().binary_search(&pivot).is_ok())
            .map(|f| (*f).clone())
            .collect();
        pivot_report(a, pivot, &flats, &local, None)
    })?;
    let direct = freeness(&MultiArrangement::simple(a.clone()))?;

    let outcome = if reports.iter().any(|r| r.outcome == Outcome::Free) {
        Outcome::Free
    } else {
        Outcome::NonFree
    };
    let conditions = reports
        .into_iter()
        .map(|r| {
            Condition::new(
                format!("pivot {} passes", pivot_of(&r)),
                r.outcome == Outcome::Free,
                ConditionWitness::Report(Box::new(r)),
            )
        })
        .collect();
    Ok(CriterionReport {
        criterion: Criterion::YoshinagaAny,
        outcome,
        conditions,
        certificate: None,
        direct: Some(Box::new(direct)),
    })
}

fn pivot_of(r: &CriterionReport) -> usize {
    match r.criterion {
        Criterion::Yoshinaga { pivot } | Criterion::Ziegler { pivot } => pivot,
        _ => 0,
    }
}

/// Order-preserving map over scoped threads; the first error wins.
fn parallel_map<T: Sync, R: Send>(
    items: &[T],
    jobs: usize,
    f: impl Fn(&T) -> Result<R> + Sync,
) -> Result<Vec<R>> {
    let jobs = jobs.max(1).min(items.len().max(1));
    if jobs == 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    let f = &f;
    let results: Vec<Result<Vec<R>>> = thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(f).collect::<Result<Vec<R>>>()))
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .unwrap_or_else(|_| Err(Error::Internal("worker panicked".into())))
            })
            .collect()
    });
    let mut out = Vec::with_capacity(items.len());
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{generate_family, Family};

    fn family(f: Family, params: &[usize]) -> Arrangement {
        generate_family(f, params, None).unwrap()
    }

    #[test]
    fn flats_inside_pivot() {
        let dims = |a: &Arrangement, p| -> Vec<usize> {
            flats_in_pivot(a, p)
                .unwrap()
                .iter()
                .map(Flat::dim)
                .collect()
        };
        assert_eq!(dims(&family(Family::Boolean, &[3]), 0), vec![2, 1, 1]);
        assert_eq!(dims(&family(Family::Braid, &[3]), 0), vec![2, 1]);
        let g = family(Family::Generic, &[4, 5]);
        let d = dims(&g, 0);
        assert_eq!(d.len(), 11);
        assert_eq!(d.iter().filter(|&&x| x == 2).count(), 4);
        assert_eq!(d.iter().filter(|&&x| x == 1).count(), 6);
    }

    #[test]
    fn boolean_four() {
        let a = family(Family::Boolean, &[4]);
        let r = yoshinaga_check(&a, 0).unwrap();
        assert_eq!(r.outcome, Outcome::Free);
        assert_eq!(r.agrees_with_direct(), Some(true));
        assert_eq!(r.certificate.unwrap().exponents(), Some(&[1, 1, 1][..]));
    }

    #[test]
    fn generic_four_five_fails_a() {
        let a = family(Family::Generic, &[4, 5]);
        let r = yoshinaga_check(&a, 0).unwrap();
        assert_eq!(r.outcome, Outcome::NonFree);
        assert!(!r.conditions[0].holds);
        assert_eq!(r.agrees_with_direct(), Some(true));
    }

    #[test]
    fn any_pivot() {
        for (f, params, free) in [
            (Family::Boolean, vec![4], true),
            (Family::Braid, vec![4], true),
            (Family::Generic, vec![4, 5], false),
        ] {
            let a = family(f, &params);
            let r = yoshinaga_any_jobs(&a, 2).unwrap();
            assert_eq!(r.outcome == Outcome::Free, free);
            assert_eq!(r.agrees_with_direct(), Some(true));
            assert_eq!(r.conditions.len(), a.len());
            assert!(r.conditions.iter().all(|c| c.holds == free));
            assert_eq!(r, yoshinaga_any(&a).unwrap());
        }
    }

    #[test]
    fn dimension_gate() {
        let a = family(Family::Braid, &[3]);
        assert_eq!(yoshinaga_any(&a), Err(Error::DimensionGate(3)));
        assert_eq!(
            yoshinaga_check(&a, 0).map(|_| ()),
            Err(Error::DimensionGate(3))
        );
    }
}

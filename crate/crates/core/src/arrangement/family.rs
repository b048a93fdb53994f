use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::lattice::rank_of;
use super::{Arrangement, LinearForm};
use crate::error::{Error, Result};

/// Seed used by seeded families when none is given.
pub const DEFAULT_SEED: u64 = 0;

const GENERIC_COEFF_BOUND: i64 = 5;
const MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Coordinate hyperplanes `x_i = 0`.
    Boolean,
    /// `x_i - x_j = 0` for `i < j`.
    Braid,
    /// `n` forms in general position.
    Generic,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "boolean" => Ok(Family::Boolean),
            "braid" => Ok(Family::Braid),
            "generic" => Ok(Family::Generic),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Boolean => "boolean",
            Family::Braid => "braid",
            Family::Generic => "generic",
        })
    }
}

/// `boolean ℓ`, `braid ℓ` or `generic ℓ n`; `seed` only affects `generic`.
pub fn generate_family(family: Family, params: &[usize], seed: Option<u64>) -> Result<Arrangement> {
    let want = match family {
        Family::Boolean | Family::Braid => 1,
        Family::Generic => 2,
    };
    if params.len() != want {
        return Err(Error::FamilyParams(format!(
            "{family} takes {want} parameter(s), got {}",
            params.len()
        )));
    }
    let ell = params[0];
    if ell == 0 {
        return Err(Error::ZeroDimension);
    }
    match family {
        Family::Boolean => {
            let forms = (0..ell)
                .map(|i| (0..ell).map(|j| i64::from(i == j)).collect())
                .collect::<Vec<Vec<i64>>>();
            Arrangement::from_i64(ell, &forms)
        }
        Family::Braid => {
            let mut forms = Vec::new();
            for i in 0..ell {
                for j in i + 1..ell {
                    let mut f = vec![0i64; ell];
                    f[i] = 1;
                    f[j] = -1;
                    forms.push(f);
                }
            }
            Arrangement::from_i64(ell, &forms)
        }
        Family::Generic => generic(ell, params[1], seed.unwrap_or(DEFAULT_SEED)),
    }
}

fn generic(ell: usize, n: usize, seed: u64) -> Result<Arrangement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let forms: Vec<Vec<i64>> = (0..n)
            .map(|_| {
                (0..ell)
                    .map(|_| rng.gen_range(-GENERIC_COEFF_BOUND..=GENERIC_COEFF_BOUND))
                    .collect()
            })
            .collect();
        if in_general_position(ell, &forms) {
            return Arrangement::from_i64(ell, &forms);
        }
    }
    Err(Error::GenericityExhausted(MAX_ATTEMPTS))
}

/// Every `min(k, ℓ)` of the forms are linearly independent, for all `k ≤ n`.
/// Checking subsets of size `min(n, ℓ)` suffices.
fn in_general_position(ell: usize, forms: &[Vec<i64>]) -> bool {
    let forms: Option<Vec<LinearForm>> = forms.iter().map(|f| LinearForm::from_i64(f)).collect();
    let Some(forms) = forms else { return false };
    if (1..forms.len()).any(|i| forms[..i].contains(&forms[i])) {
        return false;
    }
    let k = forms.len().min(ell);
    let mut ok = true;
    for_each_subset(forms.len(), k, &mut |subset| {
        if ok && rank_of(subset.iter().map(|&i| forms[i].coeffs()), ell) < k {
            ok = false;
        }
    });
    ok
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), f);
}

/// `n` pairwise non-proportional random forms with entries in
/// `[-bound, bound]` and full rank `ℓ`.
pub fn random_arrangement(ell: usize, n: usize, bound: i64, seed: u64) -> Result<Arrangement> {
    if n < ell {
        return Err(Error::FamilyParams(format!(
            "{n} forms cannot span dimension {ell}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let mut forms: Vec<LinearForm> = Vec::with_capacity(n);
        let mut guard = 0;
        while forms.len() < n && guard < 100 * n {
            guard += 1;
            let v: Vec<i64> = (0..ell).map(|_| rng.gen_range(-bound..=bound)).collect();
            if let Some(f) = LinearForm::from_i64(&v) {
                if !forms.contains(&f) {
                    forms.push(f);
                }
            }
        }
        if forms.len() == n && rank_of(forms.iter().map(LinearForm::coeffs), ell) == ell {
            return Arrangement::new(
                ell,
                forms.into_iter().map(|f| f.coeffs().to_vec()).collect(),
            );
        }
    }
    Err(Error::GenericityExhausted(MAX_ATTEMPTS))
}

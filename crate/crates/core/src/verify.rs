//! Built-in verification suites over a fixed corpus of arrangements. Each
//! suite compares a computation against an independent route (a closed
//! form, a brute-force oracle or a theorem) and reports one line per check.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{
    char_poly, char_poly_whitney, generate_family, intersection_lattice, random_arrangement,
    CharPoly, Family, MultiArrangement, Multiplicity, WHITNEY_BOUND,
};
use crate::certificate::{verify_certificate, CertificateJson};
use crate::criteria::{terao_check, yoshinaga_any_jobs, ziegler_check, Outcome};
use crate::error::{Error, Result};
use crate::logder::{
    d0_graded_piece, freeness, graded_piece, poly_det, saito_matrix, Derivation, GradedBasis,
};
use crate::polyalg::{dim_homogeneous, rat, RatMatrix, Rational};

/// Seed of the random arrangements in the corpus: entry `k` uses `k`.
pub const CORPUS_SEEDS: [u64; 5] = [1, 2, 3, 4, 5];
pub const SAITO_SEED: u64 = 7;
pub const LINALG_SEED: u64 = 11;
pub const SAITO_TUPLES: usize = 100;
pub const EULER_MAX_DEGREE: u32 = 5;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub multi: MultiArrangement,
    /// Known exponents for free members, `Some(None)` for known non-free.
    pub expected: Option<Option<Vec<u32>>>,
}

impl CorpusEntry {
    pub fn is_simple(&self) -> bool {
        self.multi.is_simple()
    }
}

fn family(f: Family, params: &[usize]) -> MultiArrangement {
    MultiArrangement::simple(generate_family(f, params, None).expect("corpus family"))
}

/// Boolean arrangements in dimensions 1 to 4, braid arrangements in
/// dimensions 3 and 4, the boolean arrangement in `K³` with multiplicity
/// `(2, 1, 1)`, generic arrangements `(3, 4)`, `(4, 5)`, `(4, 6)`, and five
/// seeded random arrangements of six forms in `K⁴` with entries in `[-2, 2]`.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    let mut push = |name: String, multi, expected| {
        out.push(CorpusEntry {
            name,
            multi,
            expected,
        })
    };
    for ell in 1..=4 {
        push(
            format!("boolean({ell})"),
            family(Family::Boolean, &[ell]),
            Some(Some(vec![1; ell])),
        );
    }
    push(
        "braid(3)".into(),
        family(Family::Braid, &[3]),
        Some(Some(vec![0, 1, 2])),
    );
    push(
        "braid(4)".into(),
        family(Family::Braid, &[4]),
        Some(Some(vec![0, 1, 2, 3])),
    );
    let boolean3 = generate_family(Family::Boolean, &[3], None).expect("corpus family");
    push(
        "boolean(3) m=(2,1,1)".into(),
        MultiArrangement::new(boolean3, Multiplicity::new(vec![2, 1, 1])).expect("lengths agree"),
        Some(Some(vec![1, 1, 2])),
    );
    for (ell, n) in [(3, 4), (4, 5), (4, 6)] {
        push(
            format!("generic({ell},{n})"),
            family(Family::Generic, &[ell, n]),
            Some(None),
        );
    }
    for seed in CORPUS_SEEDS {
        let a = random_arrangement(4, 6, 2, seed).expect("corpus random arrangement");
        push(
            format!("random(4,6,seed={seed})"),
            MultiArrangement::simple(a),
            None,
        );
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Mobius,
    Charpoly,
    Freeness,
    Terao,
    Ziegler,
    Yoshinaga,
    Hilbert,
    Euler,
    Saito,
    Linalg,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Mobius,
        Suite::Charpoly,
        Suite::Freeness,
        Suite::Terao,
        Suite::Ziegler,
        Suite::Yoshinaga,
        Suite::Hilbert,
        Suite::Euler,
        Suite::Saito,
        Suite::Linalg,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Mobius => "mobius",
            Suite::Charpoly => "charpoly",
            Suite::Freeness => "freeness",
            Suite::Terao => "terao",
            Suite::Ziegler => "ziegler",
            Suite::Yoshinaga => "yoshinaga",
            Suite::Hilbert => "hilbert",
            Suite::Euler => "euler",
            Suite::Saito => "saito",
            Suite::Linalg => "linalg",
        }
    }

    /// `"all"` expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        s.split(',').map(|p| p.trim().parse()).collect()
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status}  {:<10} {}", self.suite.name(), self.name)?;
        if !self.detail.is_empty() {
            write!(f, "  ({})", self.detail)?;
        }
        Ok(())
    }
}

struct Recorder {
    suite: Suite,
    checks: Vec<Check>,
}

impl Recorder {
    fn record(&mut self, name: impl Into<String>, outcome: Result<(bool, String)>) {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            passed,
            detail,
        });
    }
}

/// Runs one suite; computation errors become failed checks.
pub fn run_suite(suite: Suite, jobs: usize) -> Vec<Check> {
    let mut r = Recorder {
        suite,
        checks: Vec::new(),
    };
    let start = Instant::now();
    let entries = corpus();
    let simple = || entries.iter().filter(|e| e.is_simple());
    match suite {
        Suite::Mobius => {
            for e in simple() {
                r.record(&e.name, mobius_identity(&e.multi));
            }
        }
        Suite::Charpoly => {
            for e in simple() {
                r.record(&e.name, charpoly_checks(e));
            }
        }
        Suite::Freeness => {
            for e in &entries {
                r.record(&e.name, freeness_checks(e));
            }
        }
        Suite::Terao => {
            for e in simple() {
                r.record(
                    &e.name,
                    terao_check(e.multi.arrangement()).map(|rep| {
                        (
                            rep.outcome == Outcome::Consistent,
                            rep.conditions[0].label.clone(),
                        )
                    }),
                );
            }
        }
        Suite::Ziegler => {
            for e in simple() {
                let cert = match freeness(&e.multi) {
                    Ok(c) => c,
                    Err(err) => {
                        r.record(&e.name, Err(err));
                        continue;
                    }
                };
                if e.multi.dim() < 2 || !cert.exponents().is_some_and(|x| x.contains(&1)) {
                    continue;
                }
                for pivot in 0..e.multi.arrangement().len() {
                    r.record(
                        format!("{} pivot {pivot}", e.name),
                        ziegler_check(e.multi.arrangement(), pivot).map(|rep| {
                            let exps = rep
                                .certificate
                                .as_ref()
                                .and_then(|c| c.exponents().map(<[u32]>::to_vec));
                            (
                                rep.outcome == Outcome::Consistent,
                                format!("restriction exponents {exps:?}"),
                            )
                        }),
                    );
                }
            }
        }
        Suite::Yoshinaga => {
            for e in simple().filter(|e| e.multi.dim() == 4) {
                r.record(
                    &e.name,
                    yoshinaga_any_jobs(e.multi.arrangement(), jobs).map(|rep| {
                        (
                            rep.agrees_with_direct() == Some(true),
                            format!("criterion {}", rep.outcome),
                        )
                    }),
                );
            }
        }
        Suite::Hilbert => {
            for e in &entries {
                r.record(&e.name, hilbert_identity(&e.multi));
            }
        }
        Suite::Euler => {
            for e in simple() {
                r.record(&e.name, euler_decomposition(&e.multi, EULER_MAX_DEGREE));
            }
        }
        Suite::Saito => {
            r.record(
                format!("{SAITO_TUPLES} nonzero tuples, seed {SAITO_SEED}"),
                saito_divisibility(&entries, SAITO_TUPLES, SAITO_SEED),
            );
        }
        Suite::Linalg => {
            r.record(
                format!("200 matrices, seed {LINALG_SEED}"),
                linalg_oracles(200, LINALG_SEED),
            );
        }
    }
    if let Some(last) = r.checks.last_mut() {
        if last.detail.is_empty() {
            last.detail = format!("{:.2?}", start.elapsed());
        }
    }
    r.checks
}

pub fn run_suites(suites: &[Suite], jobs: usize) -> Vec<Check> {
    suites.iter().flat_map(|&s| run_suite(s, jobs)).collect()
}

/// `μ(V) = 1` and `Σ_{Y ≤ X} μ(Y) = 0` for every other flat.
pub fn mobius_identity(ma: &MultiArrangement) -> Result<(bool, String)> {
    let lattice = intersection_lattice(ma.arrangement());
    let mut ok = lattice.mobius(0) == 1;
    for j in 1..lattice.len() {
        let sum: i64 = lattice
            .lower_interval(j)
            .iter()
            .map(|&i| lattice.mobius(i))
            .sum();
        ok &= sum == 0;
    }
    Ok((ok, format!("{} flats", lattice.len())))
}

/// Closed form when known, the subset-expansion oracle, `(t - 1) | χ`,
/// alternating signs and `|[t^{ℓ-1}] χ| = n`.
fn charpoly_checks(e: &CorpusEntry) -> Result<(bool, String)> {
    let a = e.multi.arrangement();
    let chi = char_poly(a);
    let oracle = char_poly_whitney(a, WHITNEY_BOUND)?;
    let mut ok = chi == oracle;
    if !a.is_empty() {
        ok &= chi.eval(1) == 0;
    }
    let ell = a.dim();
    ok &= chi
        .coeffs()
        .iter()
        .enumerate()
        .all(|(k, &c)| c == 0 || (c > 0) == (ell - k).is_multiple_of(2));
    ok &= chi.coeffs()[ell - 1].unsigned_abs() as usize == a.len();
    if let Some(expected) = closed_form(&e.name, ell) {
        ok &= chi == expected;
    }
    Ok((ok, chi.to_expanded_string()))
}

/// `χ` for the named families: `(t-1)^ℓ`, `t(t-1)⋯(t-ℓ+1)` and, for generic
/// arrangements of `n` forms, `Σ_{k<ℓ} (-1)^k C(n,k) t^{ℓ-k}` plus the
/// constant making `χ(1) = 0`.
pub fn closed_form(name: &str, ell: usize) -> Option<CharPoly> {
    if name.starts_with("boolean(") && !name.contains("m=") {
        return Some(CharPoly::from_roots(&vec![1; ell]));
    }
    if name.starts_with("braid(") {
        return Some(CharPoly::from_roots(&(0..ell as i64).collect::<Vec<_>>()));
    }
    let rest = name.strip_prefix("generic(")?.strip_suffix(')')?;
    let (l, n) = rest.split_once(',')?;
    let (l, n): (usize, i64) = (l.parse().ok()?, n.parse().ok()?);
    let mut coeffs = vec![0i64; l + 1];
    let mut binom = 1i64;
    for k in 0..l {
        coeffs[l - k] = if k % 2 == 0 { binom } else { -binom };
        binom = binom * (n - k as i64) / (k as i64 + 1);
    }
    coeffs[0] = -coeffs.iter().sum::<i64>();
    Some(CharPoly::from_coeffs(coeffs))
}

fn freeness_checks(e: &CorpusEntry) -> Result<(bool, String)> {
    let cert = freeness(&e.multi)?;
    let json = CertificateJson::new(&cert)?;
    let reparsed = CertificateJson::parse(&json.to_json_pretty())?;
    verify_certificate(&reparsed)?;
    let mut ok = reparsed == json;
    match &e.expected {
        Some(Some(exps)) => ok &= cert.exponents() == Some(exps.as_slice()),
        Some(None) => ok &= cert.is_nonfree(),
        None => ok &= cert.is_free() || cert.is_nonfree(),
    }
    let detail = match cert.exponents() {
        Some(x) => format!("FREE {x:?}"),
        None => match cert.nonfree_reason() {
            Some(reason) => format!("NONFREE {reason}"),
            None => "UNDECIDED".into(),
        },
    };
    Ok((ok, detail))
}

/// For free `(A, m)` with exponents `e_i`:
/// `dim D(A, m)_d = Σ_i C(d - e_i + ℓ - 1, ℓ - 1)` for `0 ≤ d ≤ |m|`.
pub fn hilbert_identity(ma: &MultiArrangement) -> Result<(bool, String)> {
    let cert = freeness(ma)?;
    let Some(exps) = cert.exponents() else {
        return Ok((true, "not free, nothing to check".into()));
    };
    let ell = ma.dim();
    let ok = (0..=ma.total()).all(|d| {
        let expected: u64 = exps
            .iter()
            .map(|&e| dim_homogeneous(ell, d as i64 - e as i64))
            .sum();
        graded_piece(ma, d).dim() as u64 == expected
    });
    Ok((ok, format!("degrees 0..={}", ma.total())))
}

/// `dim D(A)_d = dim D_0(A)_d + dim S_{d-1}` for every pivot and `d ≤ dmax`.
pub fn euler_decomposition(ma: &MultiArrangement, dmax: u32) -> Result<(bool, String)> {
    let a = ma.arrangement();
    let ell = a.dim();
    let mut ok = true;
    for d in 0..=dmax {
        let full = graded_piece(ma, d).dim() as u64;
        for pivot in 0..a.len() {
            let d0 = d0_graded_piece(a, pivot, d)?.dim() as u64;
            ok &= full == d0 + dim_homogeneous(ell, d as i64 - 1);
        }
    }
    Ok((ok, format!("{} pivots, d ≤ {dmax}", a.len())))
}

fn random_member(piece: &GradedBasis, ell: usize, rng: &mut ChaCha8Rng) -> Result<Derivation> {
    let mut out = Derivation::zero(ell, piece.degree);
    for b in &piece.elements {
        out = out.add(&b.scale(&rat(rng.gen_range(-3..=3))))?;
    }
    Ok(out)
}

/// `∏ α_H^{m(H)}` divides the Saito determinant of any `ℓ` members of
/// `D(A, m)`, whatever their degrees. Draws tuples until `tuples` of them
/// have a nonzero determinant.
pub fn saito_divisibility(
    entries: &[CorpusEntry],
    tuples: usize,
    seed: u64,
) -> Result<(bool, String)> {
    const MAX_DEGREE: u32 = 3;
    let pool: Vec<&CorpusEntry> = entries.iter().filter(|e| e.multi.dim() >= 2).collect();
    let pieces: Vec<Vec<GradedBasis>> = pool
        .iter()
        .map(|e| {
            (0..=MAX_DEGREE)
                .map(|d| graded_piece(&e.multi, d))
                .collect()
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut drawn, mut nonzero) = (0, 0);
    while nonzero < tuples {
        drawn += 1;
        if drawn > 50 * tuples {
            return Ok((
                false,
                format!("only {nonzero} nonzero determinants in {drawn} draws"),
            ));
        }
        let k = rng.gen_range(0..pool.len());
        let e = pool[k];
        let ell = e.multi.dim();
        let derivs = (0..ell)
            .map(|_| {
                let d = rng.gen_range(0..=MAX_DEGREE) as usize;
                random_member(&pieces[k][d], ell, &mut rng)
            })
            .collect::<Result<Vec<_>>>()?;
        let det = poly_det(&saito_matrix(&derivs, ell)?)?;
        if det.is_zero() {
            continue;
        }
        nonzero += 1;
        let q = e.multi.defining_polynomial();
        if det.div_exact(&q)?.is_none() {
            return Ok((false, format!("{}: {det} not divisible by {q}", e.name)));
        }
    }
    Ok((true, format!("{drawn} draws")))
}

/// Cofactor expansion, the independent determinant oracle.
pub fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return rat(1);
    }
    let mut total = Rational::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Rank-nullity, kernel vectors annihilated, Bareiss against cofactor
/// expansion, and inverses on random small integer matrices.
pub fn linalg_oracles(cases: usize, seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let rows = rng.gen_range(1..=6);
        let cols = if case % 2 == 0 {
            rows
        } else {
            rng.gen_range(1..=6)
        };
        let data: Vec<Vec<Rational>> = (0..rows)
            .map(|_| (0..cols).map(|_| rat(rng.gen_range(-3..=3))).collect())
            .collect();
        let m = RatMatrix::from_rows(cols, data.clone())?;
        let kernel = m.kernel_basis();
        if m.rank() + kernel.len() != cols {
            return Ok((false, format!("case {case}: rank + nullity ≠ {cols}")));
        }
        for v in &kernel {
            if m.mul_vec(v)?.iter().any(|x| !x.is_zero()) {
                return Ok((false, format!("case {case}: kernel vector not annihilated")));
            }
        }
        if rows == cols {
            let det = m.det()?;
            if det != cofactor_det(&data) {
                return Ok((false, format!("case {case}: determinant mismatch")));
            }
            match m.inverse()? {
                Some(inv) if m.mul(&inv)? != RatMatrix::identity(rows) => {
                    return Ok((false, format!("case {case}: bad inverse")));
                }
                None if !det.is_zero() => {
                    return Ok((
                        false,
                        format!("case {case}: invertible matrix reported singular"),
                    ));
                }
                _ => {}
            }
        }
    }
    Ok((true, String::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shape() {
        let c = corpus();
        assert_eq!(c.len(), 15);
        assert_eq!(c.iter().filter(|e| e.multi.dim() == 4).count(), 9);
        for e in c.iter().filter(|e| e.name.starts_with("random")) {
            assert_eq!(e.multi.arrangement().rank(), 4, "{}", e.name);
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(
            closed_form("generic(3,4)", 3).unwrap().to_expanded_string(),
            "t^3 - 4t^2 + 6t - 3"
        );
        assert_eq!(
            closed_form("generic(4,5)", 4).unwrap().coeffs(),
            &[4, -10, 10, -5, 1]
        );
        assert!(closed_form("random(4,6,seed=1)", 4).is_none());
    }

    #[test]
    fn suite_names() {
        assert_eq!(Suite::parse_list("all").unwrap().len(), 10);
        assert_eq!(
            Suite::parse_list("mobius,saito").unwrap(),
            vec![Suite::Mobius, Suite::Saito]
        );
        assert!(Suite::parse_list("nope").is_err());
    }

    #[test]
    fn cheap_suites_pass() {
        for suite in [Suite::Mobius, Suite::Charpoly, Suite::Linalg] {
            for c in run_suite(suite, 1) {
                assert!(c.passed, "{c}");
            }
        }
    }
}

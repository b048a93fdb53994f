use std::fmt;

use super::generators::{GeneratorTable, Sweep};
use super::piece::graded_piece;
use super::saito::saito_check;
use super::Derivation;
use crate::arrangement::{char_poly, CharPoly, Factorization, MultiArrangement};
use crate::error::Result;
use crate::polyalg::{HomogPoly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NonFreeReason {
    /// `χ(A, t)` has a root outside the nonnegative integers.
    CharpolyNonsplit,
    /// Minimal generator count or degree sum is incompatible with a basis.
    GeneratorCount,
    /// Exactly `ℓ` generators of the right degrees, but their Saito
    /// determinant vanishes identically.
    SaitoDegenerate,
}

impl NonFreeReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            NonFreeReason::CharpolyNonsplit => "charpoly-nonsplit",
            NonFreeReason::GeneratorCount => "generator-count",
            NonFreeReason::SaitoDegenerate => "saito-degenerate",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "charpoly-nonsplit" => Some(NonFreeReason::CharpolyNonsplit),
            "generator-count" => Some(NonFreeReason::GeneratorCount),
            "saito-degenerate" => Some(NonFreeReason::SaitoDegenerate),
            _ => None,
        }
    }
}

impl fmt::Display for NonFreeReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Reproducible evidence behind a non-freeness verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Charpoly {
        charpoly: CharPoly,
        factorization: Factorization,
    },
    /// Generator degrees found up to `horizon` and `dim D_d` for each degree.
    Generators {
        horizon: u32,
        degrees: Vec<u32>,
        dims: Vec<usize>,
    },
    /// Degrees of the `ℓ` generators whose determinant expanded to zero.
    DegenerateDeterminant { degrees: Vec<u32> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Free {
        /// Ascending.
        exponents: Vec<u32>,
        /// Homogeneous basis, aligned with `exponents`.
        basis: Vec<Derivation>,
        /// `det(Saito matrix) = saito_constant · ∏ α_H^{m(H)}`.
        saito_constant: Rational,
        determinant: HomogPoly,
    },
    NonFree {
        reason: NonFreeReason,
        witness: Witness,
    },
    /// Only possible when the degree horizon was set below `|m|`.
    Undecided { horizon: u32, degrees: Vec<u32> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessCertificate {
    pub multi: MultiArrangement,
    /// Present for simple arrangements.
    pub charpoly: Option<CharPoly>,
    pub table: GeneratorTable,
    pub verdict: Verdict,
}

impl FreenessCertificate {
    pub fn is_free(&self) -> bool {
        matches!(self.verdict, Verdict::Free { .. })
    }

    pub fn is_nonfree(&self) -> bool {
        matches!(self.verdict, Verdict::NonFree { .. })
    }

    pub fn exponents(&self) -> Option<&[u32]> {
        match &self.verdict {
            Verdict::Free { exponents, .. } => Some(exponents),
            _ => None,
        }
    }

    pub fn basis(&self) -> Option<&[Derivation]> {
        match &self.verdict {
            Verdict::Free { basis, .. } => Some(basis),
            _ => None,
        }
    }

    pub fn nonfree_reason(&self) -> Option<NonFreeReason> {
        match &self.verdict {
            Verdict::NonFree { reason, .. } => Some(*reason),
            _ => None,
        }
    }
}

/// Knobs for [`freeness_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreenessOptions {
    /// Highest degree examined; `None` means `|m|`.
    pub horizon: Option<u32>,
    /// Reject simple arrangements with non-split `χ` before any linear algebra.
    pub charpoly_shortcut: bool,
}

impl Default for FreenessOptions {
    fn default() -> Self {
        FreenessOptions {
            horizon: None,
            charpoly_shortcut: true,
        }
    }
}

/// Decides freeness of `(A, m)` with the degree horizon `|m|`.
pub fn freeness(ma: &MultiArrangement) -> Result<FreenessCertificate> {
    freeness_with(ma, FreenessOptions::default())
}

/// Decision procedure for freeness of `D(A, m)`.
///
/// A free module of rank `ℓ` has exactly `ℓ` minimal generators, of degrees
/// summing to `|m|` (the degree of `∏ α_H^{m(H)}`). Graded Nakayama counts
/// minimal generators degree by degree, so the sweep can stop as soon as `ℓ`
/// generators are known: either they have the wrong degree sum, or their
/// Saito determinant decides. Running out of degrees at `|m|` with fewer
/// than `ℓ` generators also rules out freeness. For simple arrangements a
/// characteristic polynomial that does not split over `ℤ≥0` settles the
/// question first.
pub fn freeness_with(
    ma: &MultiArrangement,
    options: FreenessOptions,
) -> Result<FreenessCertificate> {
    let ell = ma.dim();
    let total = ma.total();
    let horizon = options.horizon.unwrap_or(total);
    let charpoly = ma.is_simple().then(|| char_poly(ma.arrangement()));

    let finish = |table: GeneratorTable, verdict: Verdict| FreenessCertificate {
        multi: ma.clone(),
        charpoly: charpoly.clone(),
        table,
        verdict,
    };

    if let Some(chi) = charpoly.as_ref().filter(|_| options.charpoly_shortcut) {
        let factorization = chi.factor();
        if !factorization.is_split() {
            return Ok(finish(
                GeneratorTable::default(),
                Verdict::NonFree {
                    reason: NonFreeReason::CharpolyNonsplit,
                    witness: Witness::Charpoly {
                        charpoly: chi.clone(),
                        factorization,
                    },
                },
            ));
        }
    }

    let mut sweep = Sweep::new(ell);
    for d in 0..=horizon {
        sweep.push(graded_piece(ma, d))?;
        let count = sweep.table.total();
        if count < ell {
            continue;
        }
        let degrees = sweep.table.degrees();
        let degree_sum: u32 = degrees.iter().sum();
        if count > ell || degree_sum != total {
            let witness = Witness::Generators {
                horizon: d,
                degrees,
                dims: sweep.table.dims(),
            };
            return Ok(finish(
                sweep.table,
                Verdict::NonFree {
                    reason: NonFreeReason::GeneratorCount,
                    witness,
                },
            ));
        }
        let generators = sweep.table.generators();
        let saito = saito_check(&generators, ma)?;
        let verdict = if saito.is_basis {
            Verdict::Free {
                exponents: degrees,
                basis: generators,
                saito_constant: saito.constant,
                determinant: saito.determinant,
            }
        } else {
            Verdict::NonFree {
                reason: NonFreeReason::SaitoDegenerate,
                witness: Witness::DegenerateDeterminant { degrees },
            }
        };
        return Ok(finish(sweep.table, verdict));
    }

    let degrees = sweep.table.degrees();
    if horizon >= total {
        let witness = Witness::Generators {
            horizon,
            degrees,
            dims: sweep.table.dims(),
        };
        Ok(finish(
            sweep.table,
            Verdict::NonFree {
                reason: NonFreeReason::GeneratorCount,
                witness,
            },
        ))
    } else {
        Ok(finish(sweep.table, Verdict::Undecided { horizon, degrees }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{generate_family, Arrangement, Family, Multiplicity};
    use crate::polyalg::rat;

    fn simple(f: Family, params: &[usize]) -> MultiArrangement {
        MultiArrangement::simple(generate_family(f, params, None).unwrap())
    }

    #[test]
    fn boolean_four_is_free() {
        let c = freeness(&simple(Family::Boolean, &[4])).unwrap();
        assert_eq!(c.exponents(), Some(&[1, 1, 1, 1][..]));
        match &c.verdict {
            Verdict::Free { saito_constant, .. } => assert_eq!(*saito_constant, rat(1)),
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn generic_is_nonsplit() {
        let c = freeness(&simple(Family::Generic, &[3, 4])).unwrap();
        assert_eq!(c.nonfree_reason(), Some(NonFreeReason::CharpolyNonsplit));
        match &c.verdict {
            Verdict::NonFree {
                witness: Witness::Charpoly { factorization, .. },
                ..
            } => assert_eq!(factorization.to_string(), "(t-1)(t^2-3t+3)"),
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn braid_four_is_free() {
        let c = freeness(&simple(Family::Braid, &[4])).unwrap();
        assert_eq!(c.exponents(), Some(&[0, 1, 2, 3][..]));
    }

    #[test]
    fn double_line_in_plane() {
        let a = Arrangement::from_i64(2, &[vec![1, 1]]).unwrap();
        let ma = MultiArrangement::new(a, Multiplicity::new(vec![2])).unwrap();
        let c = freeness(&ma).unwrap();
        assert_eq!(c.exponents(), Some(&[0, 2][..]));
    }

    #[test]
    fn boolean_with_multiplicity() {
        let ma = MultiArrangement::new(
            generate_family(Family::Boolean, &[3], None).unwrap(),
            Multiplicity::new(vec![2, 1, 1]),
        )
        .unwrap();
        let c = freeness(&ma).unwrap();
        assert_eq!(c.exponents(), Some(&[1, 1, 2][..]));
        assert!(c.charpoly.is_none());
    }

    #[test]
    fn empty_arrangement_is_free_with_zero_exponents() {
        let ma = MultiArrangement::simple(Arrangement::empty(3).unwrap());
        assert_eq!(freeness(&ma).unwrap().exponents(), Some(&[0, 0, 0][..]));
    }

    #[test]
    fn generator_route_agrees_on_generic() {
        let ma = simple(Family::Generic, &[3, 4]);
        let options = FreenessOptions {
            charpoly_shortcut: false,
            ..FreenessOptions::default()
        };
        let c = freeness_with(&ma, options).unwrap();
        assert_eq!(c.nonfree_reason(), Some(NonFreeReason::GeneratorCount));
        assert!(c.table.total() > 3);
    }

    #[test]
    fn short_horizon_is_undecided() {
        let options = FreenessOptions {
            horizon: Some(1),
            ..FreenessOptions::default()
        };
        let c = freeness_with(&simple(Family::Braid, &[4]), options).unwrap();
        assert!(matches!(c.verdict, Verdict::Undecided { horizon: 1, .. }));
    }
}

//! Machine-readable freeness certificates and their independent recheck.
//!
//! Rationals are strings (`"p"` or `"p/q"`); a polynomial is a list of
//! `[exponent, coefficient]` terms; a derivation is the list of its `ℓ`
//! coefficient polynomials.

use serde::{Deserialize, Serialize};

use crate::arrangement::{char_poly, CharPoly};
use crate::error::{Error, Result};
use crate::io::ArrangementFile;
use crate::logder::{
    freeness_with, is_member, poly_det, saito_matrix, Derivation, FreenessCertificate,
    FreenessOptions, NonFreeReason, Verdict, Witness,
};
use crate::polyalg::{format_rational, parse_rational, HomogPoly, Rational};

pub type PolyJson = Vec<(Vec<u32>, String)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharpolyJson {
    /// Ascending powers of `t`.
    pub coefficients: Vec<i64>,
    pub expanded: String,
    pub factored: String,
    pub roots: Vec<i64>,
    pub split: bool,
}

impl CharpolyJson {
    pub fn new(chi: &CharPoly) -> Self {
        let f = chi.factor();
        CharpolyJson {
            coefficients: chi.coeffs().to_vec(),
            expanded: chi.to_expanded_string(),
            factored: f.to_string(),
            split: f.is_split(),
            roots: f.roots,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRowJson {
    pub degree: u32,
    pub dim: usize,
    pub image_dim: usize,
    pub new_generators: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationJson {
    pub degree: u32,
    pub coefficients: Vec<PolyJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "UPPERCASE")]
pub enum VerdictJson {
    Free {
        exponents: Vec<u32>,
        saito_constant: String,
        determinant: PolyJson,
        basis: Vec<DerivationJson>,
    },
    Nonfree {
        reason: String,
        witness: WitnessJson,
    },
    Undecided {
        horizon: u32,
        degrees: Vec<u32>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessJson {
    Charpoly {
        charpoly: CharpolyJson,
    },
    Generators {
        horizon: u32,
        degrees: Vec<u32>,
        dims: Vec<usize>,
    },
    DegenerateDeterminant {
        degrees: Vec<u32>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub arrangement: ArrangementFile,
    pub total_multiplicity: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub charpoly: Option<CharpolyJson>,
    pub generators: Vec<GeneratorRowJson>,
    #[serde(flatten)]
    pub verdict: VerdictJson,
}

pub fn poly_to_json(p: &HomogPoly) -> PolyJson {
    p.terms()
        .map(|(e, c)| (e.clone(), format_rational(c)))
        .collect()
}

pub fn poly_from_json(nvars: usize, degree: u32, terms: &PolyJson) -> Result<HomogPoly> {
    let terms = terms
        .iter()
        .map(|(e, c)| {
            let c = parse_rational(c)
                .ok_or_else(|| Error::Certificate(format!("bad rational {c:?}")))?;
            Ok((e.clone(), c))
        })
        .collect::<Result<Vec<_>>>()?;
    HomogPoly::from_terms(nvars, degree, terms)
}

pub fn derivation_to_json(d: &Derivation) -> DerivationJson {
    DerivationJson {
        degree: d.degree(),
        coefficients: d.coeffs().iter().map(poly_to_json).collect(),
    }
}

pub fn derivation_from_json(nvars: usize, d: &DerivationJson) -> Result<Derivation> {
    if d.coefficients.len() != nvars {
        return Err(Error::Certificate(format!(
            "derivation has {} coefficients, expected {nvars}",
            d.coefficients.len()
        )));
    }
    let coeffs = d
        .coefficients
        .iter()
        .map(|p| poly_from_json(nvars, d.degree, p))
        .collect::<Result<Vec<_>>>()?;
    Derivation::new(d.degree, coeffs)
}

impl CertificateJson {
    pub fn new(cert: &FreenessCertificate) -> Result<Self> {
        let verdict = match &cert.verdict {
            Verdict::Free {
                exponents,
                basis,
                saito_constant,
                determinant,
            } => VerdictJson::Free {
                exponents: exponents.clone(),
                saito_constant: format_rational(saito_constant),
                determinant: poly_to_json(determinant),
                basis: basis.iter().map(derivation_to_json).collect(),
            },
            Verdict::NonFree { reason, witness } => VerdictJson::Nonfree {
                reason: reason.to_string(),
                witness: match witness {
                    Witness::Charpoly { charpoly, .. } => WitnessJson::Charpoly {
                        charpoly: CharpolyJson::new(charpoly),
                    },
                    Witness::Generators {
                        horizon,
                        degrees,
                        dims,
                    } => WitnessJson::Generators {
                        horizon: *horizon,
                        degrees: degrees.clone(),
                        dims: dims.clone(),
                    },
                    Witness::DegenerateDeterminant { degrees } => {
                        WitnessJson::DegenerateDeterminant {
                            degrees: degrees.clone(),
                        }
                    }
                },
            },
            Verdict::Undecided { horizon, degrees } => VerdictJson::Undecided {
                horizon: *horizon,
                degrees: degrees.clone(),
            },
        };
        Ok(CertificateJson {
            arrangement: ArrangementFile::from_multi(&cert.multi)?,
            total_multiplicity: cert.multi.total(),
            charpoly: cert.charpoly.as_ref().map(CharpolyJson::new),
            generators: cert
                .table
                .rows
                .iter()
                .map(|r| GeneratorRowJson {
                    degree: r.degree,
                    dim: r.dim,
                    image_dim: r.image_dim,
                    new_generators: r.new_generators.len(),
                })
                .collect(),
            verdict,
        })
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Certificate(msg.into()))
}

/// Rechecks a certificate from its JSON form alone.
///
/// FREE: every basis element lies in `D(A, m)`, the degrees match the
/// exponents and sum to `|m|`, and the Saito determinant re-expands to the
/// recorded polynomial, equal to `c · ∏ α_H^{m(H)}` with `c ≠ 0`. NONFREE by
/// `χ`: the recorded polynomial is recomputed and has no complete splitting.
/// Other non-freeness witnesses are replayed by rerunning the generator sweep
/// up to the recorded horizon. `χ`, when present, is always recomputed.
pub fn verify_certificate(cert: &CertificateJson) -> Result<()> {
    let ma = cert.arrangement.to_multi()?;
    if ma.total() != cert.total_multiplicity {
        return fail("total multiplicity mismatch");
    }
    if let Some(recorded) = &cert.charpoly {
        if !ma.is_simple() {
            return fail("characteristic polynomial recorded for a multiarrangement");
        }
        if *recorded != CharpolyJson::new(&char_poly(ma.arrangement())) {
            return fail("characteristic polynomial does not recompute");
        }
    }
    let ell = ma.dim();
    match &cert.verdict {
        VerdictJson::Free {
            exponents,
            saito_constant,
            determinant,
            basis,
        } => {
            let basis = basis
                .iter()
                .map(|d| derivation_from_json(ell, d))
                .collect::<Result<Vec<_>>>()?;
            if basis.len() != ell || exponents.len() != ell {
                return fail("basis size differs from the dimension");
            }
            if basis
                .iter()
                .map(Derivation::degree)
                .ne(exponents.iter().copied())
            {
                return fail("basis degrees differ from the exponents");
            }
            if exponents.iter().sum::<u32>() != ma.total() {
                return fail("exponents do not sum to |m|");
            }
            for (i, d) in basis.iter().enumerate() {
                if !is_member(d, &ma)? {
                    return fail(format!("basis element {i} is not logarithmic"));
                }
            }
            let c = parse_rational(saito_constant)
                .ok_or_else(|| Error::Certificate("bad Saito constant".into()))?;
            if c == Rational::from_integer(0.into()) {
                return fail("Saito constant is zero");
            }
            let det = poly_det(&saito_matrix(&basis, ell)?)?;
            let recorded = poly_from_json(ell, ma.total(), determinant)?;
            if det != recorded {
                return fail("Saito determinant does not re-expand to the recorded value");
            }
            if det != ma.defining_polynomial().scale(&c) {
                return fail("Saito determinant is not c times the defining polynomial");
            }
            Ok(())
        }
        VerdictJson::Nonfree { reason, witness } => {
            let reason = NonFreeReason::parse(reason)
                .ok_or_else(|| Error::Certificate(format!("unknown reason {reason:?}")))?;
            match (reason, witness) {
                (NonFreeReason::CharpolyNonsplit, WitnessJson::Charpoly { charpoly }) => {
                    if !ma.is_simple() || cert.charpoly.as_ref() != Some(charpoly) {
                        return fail("χ witness differs from the recorded χ");
                    }
                    if charpoly.split {
                        return fail("χ splits");
                    }
                    Ok(())
                }
                (NonFreeReason::GeneratorCount, WitnessJson::Generators { .. })
                | (NonFreeReason::SaitoDegenerate, WitnessJson::DegenerateDeterminant { .. }) => {
                    let horizon = match witness {
                        WitnessJson::Generators { horizon, .. } => *horizon,
                        _ => ma.total(),
                    };
                    let replay = freeness_with(
                        &ma,
                        FreenessOptions {
                            horizon: Some(horizon.max(ma.total())),
                            charpoly_shortcut: false,
                        },
                    )?;
                    let replayed = CertificateJson::new(&replay)?;
                    if replayed.verdict != cert.verdict {
                        return fail("non-freeness witness does not replay");
                    }
                    Ok(())
                }
                _ => fail("witness kind does not match the reason"),
            }
        }
        VerdictJson::Undecided { .. } => Ok(()),
    }
}

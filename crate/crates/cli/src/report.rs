use std::fmt::Write as _;

use arrfree_core::arrangement::Arrangement;
use arrfree_core::certificate::{CertificateJson, CharpolyJson};
use arrfree_core::criteria::{ConditionWitness, CriterionReport};
use arrfree_core::logder::{FreenessCertificate, Verdict, Witness};
use arrfree_core::polyalg::format_rational;
use serde_json::{json, Value};

fn tuple(xs: &[u32]) -> String {
    let parts: Vec<String> = xs.iter().map(u32::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn charpoly_text(chi: &CharpolyJson) -> String {
    let roots: Vec<String> = chi.roots.iter().map(i64::to_string).collect();
    format!(
        "chi(t) = {}\ncoefficients (ascending) = {:?}\nfactored = {}\ninteger roots = {{{}}}\nsplit = {}\n",
        chi.expanded,
        chi.coefficients,
        chi.factored,
        roots.join(","),
        if chi.split { "yes" } else { "no" }
    )
}

pub fn certificate_text(cert: &FreenessCertificate, a: &Arrangement) -> String {
    let mut out = String::new();
    match &cert.verdict {
        Verdict::Free {
            exponents,
            basis,
            saito_constant,
            determinant,
        } => {
            writeln!(out, "FREE").unwrap();
            writeln!(out, "exponents: {}", tuple(exponents)).unwrap();
            writeln!(out, "saito constant: {}", format_rational(saito_constant)).unwrap();
            writeln!(out, "saito determinant: {determinant}").unwrap();
            writeln!(out, "basis:").unwrap();
            for (i, d) in basis.iter().enumerate() {
                writeln!(out, "  [{i}] deg {}: {d}", d.degree()).unwrap();
            }
        }
        Verdict::NonFree { reason, witness } => {
            writeln!(out, "NONFREE ({reason})").unwrap();
            match witness {
                Witness::Charpoly {
                    charpoly,
                    factorization,
                } => writeln!(
                    out,
                    "chi(t) = {} = {factorization}, not split over nonnegative integers",
                    charpoly.to_expanded_string()
                )
                .unwrap(),
                Witness::Generators {
                    horizon,
                    degrees,
                    dims,
                } => writeln!(
                    out,
                    "minimal generator degrees up to {horizon}: {} (rank {}, |m| = {}); dim D_d = {dims:?}",
                    tuple(degrees),
                    a.dim(),
                    cert.multi.total()
                )
                .unwrap(),
                Witness::DegenerateDeterminant { degrees } => writeln!(
                    out,
                    "generators of degrees {} have identically zero Saito determinant",
                    tuple(degrees)
                )
                .unwrap(),
            }
        }
        Verdict::Undecided { horizon, degrees } => {
            writeln!(
                out,
                "UNDECIDED: generator degrees up to {horizon}: {} (horizon below |m| = {})",
                tuple(degrees),
                cert.multi.total()
            )
            .unwrap();
        }
    }
    if !cert.table.rows.is_empty() {
        writeln!(out, "generator table (degree, dim, image, new):").unwrap();
        for r in &cert.table.rows {
            writeln!(
                out,
                "  {:>3} {:>5} {:>5} {:>3}",
                r.degree,
                r.dim,
                r.image_dim,
                r.new_generators.len()
            )
            .unwrap();
        }
    }
    out
}

fn witness_json(w: &ConditionWitness) -> Value {
    match w {
        ConditionWitness::Exponents { expected, got } => {
            json!({"expected": expected, "got": got})
        }
        ConditionWitness::Charpoly { charpoly, .. } => {
            json!({ "charpoly": CharpolyJson::new(charpoly) })
        }
        ConditionWitness::Degrees(d) => json!({ "degrees": d }),
        ConditionWitness::Derivations(ds) => {
            json!({ "derivations": ds.iter().map(ToString::to_string).collect::<Vec<_>>() })
        }
        ConditionWitness::Certificate(c) => json!({ "certificate": cert_json(c) }),
        ConditionWitness::Localization { flat, certificate } => json!({
            "flat": {"dim": flat.dim(), "hyperplanes": flat.indices()},
            "certificate": cert_json(certificate),
        }),
        ConditionWitness::Report(r) => report_json(r),
    }
}

fn cert_json(c: &FreenessCertificate) -> Value {
    CertificateJson::new(c)
        .map(|j| serde_json::to_value(j).expect("serializable"))
        .unwrap_or_else(|e| json!({ "error": e.to_string() }))
}

pub fn report_json(r: &CriterionReport) -> Value {
    json!({
        "criterion": r.criterion.to_string(),
        "outcome": r.outcome.as_str(),
        "conditions": r.conditions.iter().map(|c| json!({
            "label": c.label,
            "holds": c.holds,
            "witness": witness_json(&c.witness),
        })).collect::<Vec<_>>(),
        "direct": r.direct.as_ref().map(|c| cert_json(c)),
        "agrees_with_direct": r.agrees_with_direct(),
    })
}

fn verdict_word(c: &FreenessCertificate) -> String {
    match c.exponents() {
        Some(e) => format!("FREE {}", tuple(e)),
        None => match c.nonfree_reason() {
            Some(r) => format!("NONFREE ({r})"),
            None => "UNDECIDED".into(),
        },
    }
}

fn conditions_text(out: &mut String, r: &CriterionReport, indent: &str) {
    for c in &r.conditions {
        let mark = if c.holds { "ok" } else { "FAIL" };
        let note = match &c.witness {
            ConditionWitness::Certificate(cert) => verdict_word(cert),
            ConditionWitness::Localization { certificate, .. } => verdict_word(certificate),
            ConditionWitness::Report(inner) => inner.outcome.to_string(),
            _ => String::new(),
        };
        writeln!(out, "{indent}[{mark}] {}  {note}", c.label).unwrap();
    }
}

pub fn report_text(r: &CriterionReport) -> String {
    let mut out = format!("{}: {}\n", r.criterion, r.outcome);
    conditions_text(&mut out, r, "  ");
    if let Some(direct) = &r.direct {
        writeln!(
            out,
            "direct certificate: {} ({})",
            verdict_word(direct),
            match r.agrees_with_direct() {
                Some(true) => "agrees",
                Some(false) => "DISAGREES",
                None => "n/a",
            }
        )
        .unwrap();
    }
    for c in &r.conditions {
        if let ConditionWitness::Report(inner) = &c.witness {
            writeln!(out, "{}: {}", inner.criterion, inner.outcome).unwrap();
            conditions_text(&mut out, inner, "    ");
        }
    }
    out
}

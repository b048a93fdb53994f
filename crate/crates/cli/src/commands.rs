use std::fmt::Write as _;
use std::path::Path;

use arrfree_core::arrangement::{
    generate_family, intersection_lattice, random_arrangement, ziegler_restriction, Arrangement,
    Family, MultiArrangement, DEFAULT_SEED,
};
use arrfree_core::certificate::{CertificateJson, CharpolyJson};
use arrfree_core::criteria::{yoshinaga_any_jobs, yoshinaga_check, ziegler_check};
use arrfree_core::io::ArrangementFile;
use arrfree_core::logder::{freeness, freeness_with, FreenessOptions};
use arrfree_core::verify::{run_suites, Suite};
use arrfree_core::Error;
use serde_json::json;

use crate::report::{certificate_text, charpoly_text, report_json, report_text};
use crate::{CliError, Output};

const RANDOM_DEFAULT_BOUND: i64 = 2;

fn load(path: &Path) -> Result<MultiArrangement, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(ArrangementFile::parse(&text)?.to_multi()?)
}

fn simple_only(ma: &MultiArrangement, what: &str) -> Result<(), CliError> {
    if ma.is_simple() {
        Ok(())
    } else {
        Err(CliError::Input(format!(
            "{what} is defined for multiplicity one only"
        )))
    }
}

fn index_set(indices: &[usize]) -> String {
    let parts: Vec<String> = indices.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn lattice(path: &Path) -> Result<Output, CliError> {
    let ma = load(path)?;
    let lattice = intersection_lattice(ma.arrangement());
    let mut text = format!(
        "{} flats\n{:>4} {:>6}  hyperplanes\n",
        lattice.len(),
        "dim",
        "mu"
    );
    let mut rows = Vec::new();
    for (flat, &mu) in lattice.flats().iter().zip(lattice.mobius_values()) {
        writeln!(
            text,
            "{:>4} {:>6}  {}",
            flat.dim(),
            mu,
            index_set(flat.indices())
        )
        .unwrap();
        rows.push(json!({"dim": flat.dim(), "hyperplanes": flat.indices(), "mobius": mu}));
    }
    Ok(Output::new(text, json!({ "flats": rows })))
}

pub fn charpoly(path: &Path) -> Result<Output, CliError> {
    let ma = load(path)?;
    simple_only(&ma, "the characteristic polynomial")?;
    let chi = CharpolyJson::new(&arrfree_core::arrangement::char_poly(ma.arrangement()));
    Ok(Output::new(
        charpoly_text(&chi),
        serde_json::to_value(&chi).expect("serializable"),
    ))
}

pub fn free(path: &Path, dmax: Option<u32>) -> Result<Output, CliError> {
    let ma = load(path)?;
    let cert = freeness_with(
        &ma,
        FreenessOptions {
            horizon: dmax,
            ..FreenessOptions::default()
        },
    )?;
    let json = CertificateJson::new(&cert)?;
    Ok(Output::new(
        certificate_text(&cert, ma.arrangement()),
        serde_json::to_value(&json).expect("serializable"),
    ))
}

pub fn ziegler(path: &Path, pivot: usize) -> Result<Output, CliError> {
    let ma = load(path)?;
    simple_only(&ma, "Ziegler restriction")?;
    let a = ma.arrangement();
    let z = ziegler_restriction(a, pivot)?;
    let restricted = freeness(&z.multi)?;
    let original = freeness(&ma)?;

    let mut text = format!(
        "pivot {pivot}: {} ({})\nrestriction to {} coordinates: {} hyperplanes, |m| = {}\n",
        a.label(pivot),
        a.form(pivot),
        z.multi.dim(),
        z.multi.arrangement().len(),
        z.multi.total()
    );
    for (k, form) in z.multi.arrangement().forms().iter().enumerate() {
        writeln!(
            text,
            "  {form}  m = {}  from {}",
            z.multi.multiplicity().get(k),
            z.multi.arrangement().label(k)
        )
        .unwrap();
    }
    text.push_str(&certificate_text(&restricted, z.multi.arrangement()));

    let mut json = json!({
        "pivot": pivot,
        "restriction": ArrangementFile::from_multi(&z.multi)?,
        "groups": z.groups,
        "certificate": CertificateJson::new(&restricted)?,
        "original_exponents": original.exponents(),
    });
    match ziegler_check(a, pivot) {
        Ok(report) => {
            writeln!(
                text,
                "original exponents {:?}; restriction check {}",
                original.exponents().unwrap_or_default(),
                report.outcome
            )
            .unwrap();
            for c in &report.conditions {
                writeln!(
                    text,
                    "  [{}] {}",
                    if c.holds { "ok" } else { "FAIL" },
                    c.label
                )
                .unwrap();
            }
            json["check"] = report_json(&report);
        }
        Err(Error::HypothesisViolated(why)) => {
            writeln!(text, "theorem not applicable: {why}").unwrap();
            json["check"] = json!({ "not_applicable": why });
        }
        Err(e) => return Err(e.into()),
    }
    Ok(Output::new(text, json))
}

pub fn yoshinaga(path: &Path, pivot: Option<usize>, jobs: usize) -> Result<Output, CliError> {
    let ma = load(path)?;
    simple_only(&ma, "the criterion")?;
    let a = ma.arrangement();
    let report = match pivot {
        Some(p) => yoshinaga_check(a, p)?,
        None => yoshinaga_any_jobs(a, jobs)?,
    };
    if report.agrees_with_direct() == Some(false) {
        let out = Output {
            text: report_text(&report),
            json: report_json(&report),
            failure: Some(CliError::Internal(
                "criterion disagrees with the direct freeness certificate".into(),
            )),
        };
        return Ok(out);
    }
    Ok(Output::new(report_text(&report), report_json(&report)))
}

pub fn gen(family: &str, params: &[usize], seed: Option<u64>) -> Result<Output, CliError> {
    let (a, seed_used): (Arrangement, Option<u64>) = if family == "random" {
        let seed = seed.unwrap_or(DEFAULT_SEED);
        let (ell, n, bound) = match params {
            [ell, n] => (*ell, *n, RANDOM_DEFAULT_BOUND),
            [ell, n, b] => (*ell, *n, *b as i64),
            _ => return Err(CliError::Input("random takes L N [BOUND]".into())),
        };
        (random_arrangement(ell, n, bound, seed)?, Some(seed))
    } else {
        let family: Family = family.parse()?;
        let seed = (family == Family::Generic).then(|| seed.unwrap_or(DEFAULT_SEED));
        (generate_family(family, params, seed)?, seed)
    };
    if let Some(s) = seed_used {
        eprintln!("seed: {s}");
    }
    let file = ArrangementFile::from_arrangement(&a)?;
    Ok(Output::new(
        file.to_json_pretty(),
        serde_json::to_value(&file).expect("serializable"),
    ))
}

pub fn verify(suite: &str, jobs: usize) -> Result<Output, CliError> {
    let suites = Suite::parse_list(suite)?;
    let checks = run_suites(&suites, jobs);
    let failed = checks.iter().filter(|c| !c.passed).count();
    let mut text = String::new();
    for c in &checks {
        writeln!(text, "{c}").unwrap();
    }
    writeln!(text, "{} passed, {failed} failed", checks.len() - failed).unwrap();
    let json = json!({
        "checks": checks.iter().map(|c| json!({
            "suite": c.suite.name(),
            "name": c.name,
            "passed": c.passed,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
        "passed": checks.len() - failed,
        "failed": failed,
    });
    Ok(Output {
        text,
        json,
        failure: (failed > 0)
            .then(|| CliError::Internal(format!("{failed} verification checks failed"))),
    })
}

use std::fmt;

use anyhow::{anyhow, bail, Result};
use serde::Serialize;
use serde_json::{json, Value};

use mixhom_core::builders::banalitaet_pair;
use mixhom_core::deform::{imishom_check, pbar_decomposition, verify_cuqu, verify_relazion, DeformedStructure};
use mixhom_core::format::complex_to_json;
use mixhom_core::homology::{
    corollary_check, imageiso_check, induced_map, lemma_checks, linear_homology, mixed_homology,
    seslemma_check, skyscraper_test, total_homology, verify_theorem, Coboundary, Direction, Grading,
    MapMode,
};
use mixhom_core::{Error, Matrix};

use crate::args::{Check, CobArg, DirectionArg, GradingArg};
use crate::input::Input;
use crate::report::Envelope;

/// A check whose hypothesis fails on this input.
#[derive(Debug)]
pub struct NotApplicable(pub String);

impl fmt::Display for NotApplicable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not applicable: {}", self.0)
    }
}

impl std::error::Error for NotApplicable {}

/// Failed hypotheses become [`NotApplicable`]; other errors pass through.
fn hypothesis<T>(r: mixhom_core::Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Hypothesis(msg) => anyhow!(NotApplicable(msg)),
        other => other.into(),
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn envelope(command: &str, input: &Input, holds: Option<bool>, result: Value) -> Envelope {
    Envelope {
        command: command.to_string(),
        input: Some(input.summary.clone()),
        holds,
        result,
    }
}

pub fn build(input: &Input) -> String {
    complex_to_json(&input.complex, input.seq.as_ref())
}

pub fn homology(input: &Input, direction: DirectionArg) -> Result<Envelope> {
    let dir = match direction {
        DirectionArg::Chain => Direction::Chain,
        DirectionArg::Cochain => Direction::Cochain,
    };
    let h = linear_homology(&input.complex, dir)?;
    Ok(envelope("homology", input, None, json!({ "direction": dir, "degrees": h })))
}

fn coboundary<'a>(input: &'a Input, cob: CobArg) -> Result<Coboundary<'a>> {
    Ok(match cob {
        CobArg::D => Coboundary::D,
        CobArg::Upsilon => Coboundary::Upsilon(input.seq()?),
    })
}

pub fn mixed(input: &Input, cob: Option<CobArg>, grading: GradingArg, max: Option<usize>) -> Result<Envelope> {
    let cob = cob.unwrap_or(if input.seq_from_flag { CobArg::Upsilon } else { CobArg::D });
    let grading = match grading {
        GradingArg::Natural => Grading::Natural,
        GradingArg::Parity => Grading::Parity,
    };
    let h = mixed_homology(&input.complex, coboundary(input, cob)?, grading, max)?;
    let result = json!({
        "coboundary": match cob { CobArg::D => "d", CobArg::Upsilon => "upsilon" },
        "homology": h,
    });
    Ok(envelope("mixed-homology", input, None, result))
}

pub fn skyscraper(input: &Input, cob: CobArg) -> Result<Envelope> {
    let r = skyscraper_test(&input.complex, coboundary(input, cob)?)?;
    let verdict = match (&r.witness, r.holds) {
        (_, true) => "skyscraper".to_string(),
        (Some(w), false) => format!(
            "not a skyscraper, witness degree {}",
            w.failing_degree.unwrap_or(w.class_degree)
        ),
        (None, false) => "not a skyscraper".to_string(),
    };
    let mut result = to_value(&r);
    result
        .as_object_mut()
        .expect("report is an object")
        .insert("verdict".into(), verdict.into());
    Ok(envelope("skyscraper", input, Some(r.holds), result))
}

fn structure(input: &Input) -> Result<DeformedStructure> {
    Ok(DeformedStructure::new(input.complex.clone(), input.seq()?)?)
}

/// Runs one check; `(holds, result)`.
fn run_check(check: Check, input: &Input, max: Option<usize>) -> Result<(bool, Value)> {
    let d = &input.complex;
    Ok(match check {
        Check::Theorem => {
            let r = verify_theorem(d, input.seq()?, max)?;
            (r.holds, to_value(&r))
        }
        Check::Deformation => {
            let r = verify_relazion(&structure(input)?)?;
            (r.holds(), to_value(&r))
        }
        Check::Karoubi => {
            let (s, r) = hypothesis(verify_cuqu(d.clone()))?;
            let t_identity = s.t.ops().iter().all(|t| *t == Matrix::identity(d.field(), t.rows()));
            (r.holds(), json!({ "t_is_identity": t_identity, "identities": r }))
        }
        Check::Projector => {
            let r = hypothesis(pbar_decomposition(&structure(input)?))?.report;
            (r.holds(), to_value(&r))
        }
        Check::ReducedModel => {
            let m = hypothesis(imishom_check(&structure(input)?))?;
            let result = json!({ "dims": m.sub.complex.dims(), "identities": m.report });
            (m.report.holds(), result)
        }
        Check::ShortExact => {
            let m = hypothesis(imishom_check(&structure(input)?))?;
            let r = hypothesis(seslemma_check(&m.sub.complex, input.seq()?, max))?;
            (r.holds, json!({ "model_dims": m.sub.complex.dims(), "report": r }))
        }
        Check::ImageIso => {
            let r = hypothesis(imageiso_check(d, input.seq()?, max))?;
            (r.holds, to_value(&r))
        }
        Check::Corollary => {
            let r = hypothesis(corollary_check(d, max))?;
            (r.holds, to_value(&r))
        }
        Check::Lemmas => {
            let r = hypothesis(lemma_checks(d, input.seq()?))?;
            (r.iter().all(|l| l.holds), json!({ "lemmas": r }))
        }
        Check::CochainVsMixed => cochain_vs_mixed(input, max)?,
        Check::All => unreachable!("expanded by the caller"),
    })
}

/// The point maps to `k` in every degree; cochain homology agrees, mixed
/// homology does not.
fn cochain_vs_mixed(input: &Input, max: Option<usize>) -> Result<(bool, Value)> {
    if input.summary.source != "builtin:banalitaet" {
        bail!(NotApplicable("only defined for --builtin banalitaet".into()));
    }
    let (_, target, phi) = banalitaet_pair(input.complex.field(), input.complex.top());
    let cochain = induced_map(&phi, MapMode::Cochain, max)?;
    let mixed = induced_map(&phi, MapMode::Mixed, max)?;
    let h = total_homology(&target, Grading::Natural, max)?;
    let holds = cochain.quasi_iso && !mixed.quasi_iso;
    let result = json!({
        "cochain_quasi_iso": cochain.quasi_iso,
        "mixed_quasi_iso": mixed.quasi_iso,
        "target_mixed_homology": h,
        "cochain": cochain,
        "mixed": mixed,
    });
    Ok((holds, result))
}

const ALL_CHECKS: &[Check] = &[
    Check::Theorem,
    Check::Deformation,
    Check::Karoubi,
    Check::Projector,
    Check::ReducedModel,
    Check::ShortExact,
    Check::ImageIso,
    Check::Corollary,
    Check::Lemmas,
    Check::CochainVsMixed,
];

#[derive(Serialize)]
struct Summary {
    check: &'static str,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

pub fn verify(check: Check, input: &Input, max: Option<usize>) -> Result<Envelope> {
    let command = format!("verify {}", check.name());
    if check != Check::All {
        let (holds, result) = run_check(check, input, max)?;
        return Ok(envelope(&command, input, Some(holds), result));
    }
    let mut summary = Vec::new();
    let mut reports = serde_json::Map::new();
    for &c in ALL_CHECKS {
        // A missing sequence only rules out the checks that need one.
        let applicable = input.seq.is_some()
            || matches!(c, Check::Karoubi | Check::Corollary | Check::CochainVsMixed);
        let outcome = if applicable {
            run_check(c, input, max)
        } else {
            Err(anyhow!(NotApplicable("needs a polynomial sequence".into())))
        };
        let (status, detail) = match outcome {
            Ok((holds, r)) => {
                reports.insert(c.name().into(), r);
                (if holds { "pass" } else { "fail" }, None)
            }
            Err(e) => match e.downcast_ref::<NotApplicable>() {
                Some(na) => ("skipped", Some(na.0.clone())),
                None => return Err(e.context(format!("check {}", c.name()))),
            },
        };
        summary.push(Summary { check: c.name(), status, detail });
    }
    let holds = summary.iter().all(|s| s.status != "fail");
    let result = json!({ "checks": summary, "reports": reports });
    Ok(envelope(&command, input, Some(holds), result))
}

#[derive(Serialize)]
struct BuiltinInfo {
    name: &'static str,
    description: &'static str,
    parameters: &'static str,
    recommended_sequence: &'static str,
}

const BUILTINS: &[BuiltinInfo] = &[
    BuiltinInfo {
        name: "appendix0",
        description: "k^2 in degrees 0 and 1, d = id, b(u, v) = (0, u); not a skyscraper",
        parameters: "--field",
        recommended_sequence: "-",
    },
    BuiltinInfo {
        name: "banalitaet",
        description: "k in every degree, b = 0, d = id out of odd degrees",
        parameters: "--field --N (default 6)",
        recommended_sequence: "one",
    },
    BuiltinInfo {
        name: "exterior2",
        description: "normalized noncommutative forms of the exterior algebra on x, y",
        parameters: "--field --N (default 4) --sigma",
        recommended_sequence: "cyclic",
    },
    BuiltinInfo {
        name: "example1",
        description: "quantum plane xy + q yx = 0, b and d right multiplication by x and y",
        parameters: "--field --N (default 6) --q (default 2)",
        recommended_sequence: "geometric",
    },
    BuiltinInfo {
        name: "example2",
        description: "k in degrees 0..2, b_1 = id, d_1 = id",
        parameters: "--field",
        recommended_sequence: "one",
    },
    BuiltinInfo {
        name: "point",
        description: "k in degree 0",
        parameters: "--field",
        recommended_sequence: "one",
    },
    BuiltinInfo {
        name: "random",
        description: "random mixed complex with b^2 = d^2 = 0",
        parameters: "--field --dims --seed",
        recommended_sequence: "-",
    },
];

pub fn examples() -> Envelope {
    Envelope {
        command: "examples".into(),
        input: None,
        holds: None,
        result: json!({ "builtins": BUILTINS }),
    }
}

//! JSON and `key: value` renderings of a [`FullReport`].
//!
//! The text form is the JSON document flattened to dotted keys, one per
//! line, in document order; scalars are written bare and arrays or null as
//! compact JSON. Both forms are byte-stable for a fixed input and seed.

use serde_json::{json, Map, Value};

use crate::io::parse::format_combination;
use crate::lie_core::Exponentiality;
use crate::rational::Rational;
use crate::verdict::FullReport;

fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|q| Value::String(q.to_string())).collect())
}

pub fn report_value(r: &FullReport) -> Value {
    let d = &r.datum;
    let basis = d.algebra().basis_names();
    let s = &r.structure;
    let (exp, exp_witness) = match &s.exponentiality {
        Exponentiality::PassedSampling => ("PassedSampling", Value::Null),
        Exponentiality::FailedWithWitness(w) => ("FailedWithWitness", rationals(&w.0)),
        Exponentiality::Skipped => ("Skipped", Value::Null),
    };
    json!({
        "datum": {
            "algebra": d.algebra().name(),
            "basis": basis,
            "generators": d.subalgebra().generators().iter().map(|g| format_combination(g, basis)).collect::<Vec<_>>(),
            "functional": rationals(d.functional().values()),
            "completion": d.completion_indices().iter().map(|&k| basis[k].clone()).collect::<Vec<_>>(),
        },
        "structure": {
            "valid": s.is_valid,
            "solvable": s.is_solvable,
            "nilpotent": s.is_nilpotent,
            "unimodular": s.is_unimodular,
            "derived_series_dims": s.derived_series_dims,
            "lower_central_series_dims": s.lower_central_series_dims,
            "exponentiality": exp,
            "exponentiality_witness": exp_witness,
        },
        "d_tau": r.spectral.d_tau,
        "m": r.spectral.m,
        "witness": r.spectral.witness.as_deref().map_or(Value::Null, rationals),
        "spectral": r.spectral.kind.to_string(),
        "admissibility": {
            "verdict": r.admissibility.kind.to_string(),
            "reason": r.admissibility.reason.code(),
            "established": r.admissibility.established,
            "unimodular": r.admissibility.unimodular,
        },
        "rank_method": {
            "probabilistic_d_tau": r.generic.d_tau,
            "symbolic_d_tau": r.symbolic.as_ref().map(|g| g.d_tau),
            "bound": r.config.bound,
        },
        "warnings": r.warnings,
        "seed": r.config.seed,
        "trials": r.config.trials,
    })
}

pub fn render_json(r: &FullReport) -> String {
    let mut s = serde_json::to_string_pretty(&report_value(r)).expect("serializable");
    s.push('\n');
    s
}

/// Dotted-key flattening of a JSON object.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    fn go(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, child) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    go(&key, child, out);
                }
            }
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    go("", v, &mut out);
    out
}

pub fn render_text(r: &FullReport) -> String {
    flatten(&report_value(r))
        .into_iter()
        .map(|(k, v)| format!("{k}: {v}\n"))
        .collect()
}

/// Inverse of [`render_text`] line splitting, for consumers of the text form.
pub fn parse_text(text: &str) -> Map<String, Value> {
    text.lines()
        .filter_map(|l| l.split_once(": "))
        .map(|(k, v)| (k.to_string(), Value::String(v.to_string())))
        .collect()
}

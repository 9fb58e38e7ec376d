//! Command results: exit code plus a text and a JSON rendering.

use adend_core::{Failure, OperatorReport, Verdict};
use serde_json::{json, Value};

use crate::format::rat_str;

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    pub fn new(holds: bool, text: impl Into<String>, json: Value) -> Self {
        Outcome { code: if holds { EXIT_HOLDS } else { EXIT_FAILS }, text: text.into(), json }
    }

    pub fn ok(text: impl Into<String>, json: Value) -> Self {
        Outcome::new(true, text, json)
    }
}

pub fn failure_json(f: &Failure, basis: &[String]) -> Value {
    json!({
        "identity": f.identity,
        "tuple": f.names(basis),
        "residual": f.residual.iter().map(rat_str).collect::<Vec<_>>(),
    })
}

pub fn failure_text(f: &Failure, basis: &[String]) -> String {
    let res: Vec<String> = f.residual.iter().map(rat_str).collect();
    format!("  fails `{}` at ({}), residual [{}]", f.identity, f.names(basis).join(", "), res.join(", "))
}

pub fn verdict_json(v: &Verdict, basis: &[String]) -> Value {
    json!({ "holds": v.holds, "witness": v.failure.as_ref().map(|f| failure_json(f, basis)) })
}

/// `label: holds` or `label: fails` with the witness on the next line.
pub fn verdict_text(label: &str, v: &Verdict, basis: &[String]) -> String {
    match &v.failure {
        None if v.holds => format!("{label}: holds"),
        None => format!("{label}: fails"),
        Some(f) => format!("{label}: fails\n{}", failure_text(f, basis)),
    }
}

pub fn verdict_outcome(label: &str, v: &Verdict, basis: &[String]) -> Outcome {
    Outcome::new(v.holds, verdict_text(label, v, basis), verdict_json(v, basis))
}

pub fn operator_json(r: &OperatorReport, basis: &[String]) -> Value {
    json!({
        "is_operator": r.is_operator,
        "is_strong": r.is_strong,
        "witness": r.failure.as_ref().map(|f| failure_json(f, basis)),
    })
}

pub fn operator_text(label: &str, r: &OperatorReport, basis: &[String]) -> String {
    let mut s = format!("{label}: {}", if r.is_operator { "operator" } else { "not an operator" });
    if r.is_operator {
        s.push_str(if r.is_strong { ", strong" } else { ", not strong" });
    }
    if let Some(f) = &r.failure {
        s.push('\n');
        s.push_str(&failure_text(f, basis));
    }
    s
}

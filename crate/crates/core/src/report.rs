//! Machine-readable reports: `{command, inputs, results, checks, seed, version}`.
//!
//! Everything is serialized through fixed-order containers so that the same
//! inputs and seed always give byte-identical JSON. Exact rationals are
//! `"p/q"` strings, complex numbers `[re, im]` pairs and polynomials their
//! canonical printed form.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::exact::ring::q_string;
use crate::exact::{Poly, Q};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Measured defect; `0` for an exact identity that holds.
    pub residual: Option<f64>,
    /// Acceptance bound; `0` means exact.
    pub tolerance: Option<f64>,
    pub detail: String,
}

impl Check {
    /// Passes when `residual < tolerance`.
    pub fn numeric(name: impl Into<String>, residual: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        let status = if residual < tolerance { Status::Pass } else { Status::Fail };
        Check { name: name.into(), status, residual: Some(residual), tolerance: Some(tolerance), detail: detail.into() }
    }

    /// An exact (boolean) property.
    pub fn exact(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual: Some(if ok { 0.0 } else { 1.0 }),
            tolerance: Some(0.0),
            detail: detail.into(),
        }
    }

    /// Wraps an error as a failed check.
    pub fn error(name: impl Into<String>, err: &crate::Error) -> Self {
        Check { name: name.into(), status: Status::Fail, residual: None, tolerance: None, detail: err.to_string() }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub version: String,
}

impl Report {
    pub fn new(command: impl Into<String>, inputs: Value, seed: u64) -> Self {
        Report { command: command.into(), inputs, results: json!({}), checks: Vec::new(), seed, version: VERSION.to_string() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Human-readable rendering: the results as indented JSON, then one
    /// line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        if !self.results.as_object().is_some_and(|m| m.is_empty()) {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&self.results).expect("values serialize"));
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            let _ = write!(out, "[{tag}] {}", c.name);
            match (c.residual, c.tolerance) {
                (Some(r), Some(t)) if t > 0.0 => {
                    let _ = write!(out, "  residual {r:.3e} (tol {t:.1e})");
                }
                _ => {}
            }
            if !c.detail.is_empty() {
                let _ = write!(out, "  {}", c.detail);
            }
            out.push('\n');
        }
        out
    }
}

pub fn q_json(q: &Q) -> Value {
    Value::String(q_string(q))
}

pub fn c_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn cs_json(zs: &[Complex64]) -> Value {
    Value::Array(zs.iter().map(|z| c_json(*z)).collect())
}

pub fn poly_json(p: &Poly<Q>) -> Value {
    Value::String(p.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::rat;

    #[test]
    fn serialization_is_canonical() {
        let mut r = Report::new("demo", json!({"n": 3}), 0);
        r.results = json!({"q": q_json(&rat(-3, 6)), "z": c_json(Complex64::new(1.0, -0.5))});
        r.checks.push(Check::numeric("small", 1e-12, 1e-8, ""));
        r.checks.push(Check::exact("identity", false, "residual x"));
        let s = r.to_json();
        assert!(s.contains("\"-1/2\"") && s.contains("\"status\": \"fail\""));
        assert_eq!(s, r.clone().to_json());
        assert!(!r.passed());
        assert!(r.to_text().contains("[PASS] small"));
    }
}

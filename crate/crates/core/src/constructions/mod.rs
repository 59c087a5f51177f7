//! Algebra families and the constructions built on them.

pub mod derived;
pub mod families;
pub mod skew;
pub mod tilde;

use serde::Serialize;

pub use families::{build_anm, build_nakayama_selfinjective, build_preprojective, AnmSpec, Dynkin};

/// Outcome of a verification pipeline: named checks plus the dimensions seen.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Certificate {
    pub name: String,
    pub inputs: serde_json::Map<String, serde_json::Value>,
    pub dims: std::collections::BTreeMap<String, usize>,
    pub checks: Vec<Check>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Certificate {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            ok: true,
            ..Default::default()
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.inputs.insert(key.into(), value.into());
    }

    pub fn dim(&mut self, key: &str, d: usize) {
        self.dims.insert(key.into(), d);
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) -> bool {
        self.check_with(name, passed, None)
    }

    pub fn check_with(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) -> bool {
        self.ok &= passed;
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
        });
        passed
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }
}

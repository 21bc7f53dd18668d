//! Check results and their JSON form.

use std::time::Instant;

use delshadow_core::Family;
use serde::Serialize;
use serde_json::Value;

/// A family that contradicts a proven claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Members in `≤` order, written as words.
    pub family: Vec<String>,
    pub note: String,
}

impl Violation {
    pub fn new(family: &Family, note: impl Into<String>) -> Self {
        Self {
            family: family.iter().map(|x| x.to_string()).collect(),
            note: note.into(),
        }
    }

    /// A violation that is not about a particular family.
    pub fn note(note: impl Into<String>) -> Self {
        Self {
            family: Vec::new(),
            note: note.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: Value,
    pub instances: u64,
    pub violations: Vec<Violation>,
    /// Findings that are reported but are not failures, such as the
    /// outcome of an open-conjecture probe or equality certificates.
    pub observations: Vec<String>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn new(check: &str, params: Value) -> Self {
        Self {
            check: check.to_string(),
            params,
            instances: 0,
            violations: Vec::new(),
            observations: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violate(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn observe(&mut self, text: impl Into<String>) {
        self.observations.push(text.into());
    }

    pub(crate) fn finish(mut self, started: Instant) -> Self {
        self.elapsed_ms = started.elapsed().as_millis() as u64;
        self
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report is plain data")
    }

    /// The JSON form without `elapsed_ms`; identical budgets give identical
    /// output.
    pub fn to_json_untimed(&self) -> Value {
        let mut v = self.to_json();
        if let Value::Object(map) = &mut v {
            map.remove("elapsed_ms");
        }
        v
    }

    /// One human-readable line.
    pub fn summary(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        format!(
            "{status} {} {} instances={} violations={} elapsed_ms={}",
            self.check,
            self.params,
            self.instances,
            self.violations.len(),
            self.elapsed_ms
        )
    }
}

//! Check records produced by the verifiers.

use serde::{Deserialize, Serialize};

/// One verified claim. `passed` is exactly `defect <= tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub defect: f64,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, defect: f64, tolerance: f64) -> Self {
        Self { name: name.into(), passed: defect <= tolerance, defect, tolerance, witness: None, note: None }
    }

    /// A check that was not run; recorded with its reason so nothing is
    /// dropped silently.
    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Self { note: Some(format!("skipped: {}", reason.into())), ..Self::new(name, 0.0, 0.0) }
    }

    pub fn with_witness(mut self, witness: Vec<f64>) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Ordered collection of checks.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Sorts checks by name (stable for equal names).
    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }
}

/// Running maximum used while sweeping trials, remembering the sample that
/// produced it.
#[derive(Debug, Clone, Default)]
pub(crate) struct Worst {
    pub value: f64,
    pub witness: Option<Vec<f64>>,
}

impl Worst {
    pub fn record(&mut self, value: f64, witness: impl FnOnce() -> Vec<f64>) {
        if value > self.value || (value.is_nan() && !self.value.is_nan()) {
            self.value = value;
            self.witness = Some(witness());
        }
    }

    pub fn into_check(self, name: &str, tolerance: f64) -> Check {
        let check = Check::new(name, self.value, tolerance);
        match self.witness {
            Some(w) if !check.passed => check.with_witness(w),
            _ => check,
        }
    }
}

//! Pass/fail findings produced by the verification checks.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub name: String,
    pub pass: bool,
    /// The offending or extremal term, if any.
    pub witness: Option<String>,
}

impl Finding {
    pub fn new(name: impl Into<String>, pass: bool, witness: Option<String>) -> Self {
        Self {
            name: name.into(),
            pass,
            witness,
        }
    }

    pub fn pass(name: impl Into<String>) -> Self {
        Self::new(name, true, None)
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self::new(name, false, Some(witness.into()))
    }

    /// Passes iff `ok`; the witness is recorded either way.
    pub fn check(name: impl Into<String>, ok: bool, witness: impl Into<String>) -> Self {
        Self::new(name, ok, Some(witness.into()))
    }
}

pub fn all_pass(findings: &[Finding]) -> bool {
    findings.iter().all(|f| f.pass)
}

pub fn first_failure(findings: &[Finding]) -> Option<&Finding> {
    findings.iter().find(|f| !f.pass)
}

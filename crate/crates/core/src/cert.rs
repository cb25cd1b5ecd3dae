//! Verification certificates: a canonical, hashed JSON body with runtimes
//! kept in a sidecar outside the hash, or CSV.

use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{LtvError, Result};
use crate::report::Finding;

pub const SCHEMA: &str = "ltv-cert/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub range: String,
    pub status: Status,
    pub witness: Option<String>,
    #[serde(skip)]
    pub runtime: Duration,
}

impl Check {
    pub fn new(name: impl Into<String>, anchor: &str, range: impl Into<String>, status: Status, witness: Option<String>) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            range: range.into(),
            status,
            witness,
            runtime: Duration::ZERO,
        }
    }

    pub fn from_finding(f: Finding, anchor: &str, range: impl Into<String>) -> Self {
        let status = if f.pass { Status::Pass } else { Status::Fail };
        Self::new(f.name, anchor, range, status, f.witness)
    }

    /// One check summarizing many findings: passes iff all pass; the witness
    /// is the first failure, or the last witness seen.
    pub fn aggregate(name: impl Into<String>, anchor: &str, range: impl Into<String>, findings: &[Finding]) -> Self {
        let witness = match findings.iter().find(|f| !f.pass) {
            Some(bad) => Some(match &bad.witness {
                Some(w) => format!("{}: {w}", bad.name),
                None => bad.name.clone(),
            }),
            None => findings.iter().rev().find_map(|f| f.witness.clone()),
        };
        let status = if findings.iter().all(|f| f.pass) { Status::Pass } else { Status::Fail };
        Self::new(name, anchor, range, status, witness)
    }

    pub fn skipped(name: impl Into<String>, anchor: &str, range: impl Into<String>, reason: &str) -> Self {
        Self::new(name, anchor, range, Status::Skipped, Some(reason.into()))
    }

    pub fn with_runtime(mut self, runtime: Duration) -> Self {
        self.runtime = runtime;
        self
    }
}

/// A rectangular table of strings with named columns.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertParams {
    pub command: String,
    pub p: u64,
    pub f: u32,
    pub e: u32,
    pub q: u64,
    pub max_n: u64,
    pub disc_s: u32,
    pub tier: u8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub params: CertParams,
    pub checks: Vec<Check>,
    pub table: Option<Table>,
    pub total_runtime: Duration,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// 0 if no check failed, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            2
        }
    }

    /// The hashed part: parameters, checks and table, without runtimes.
    pub fn body(&self) -> Value {
        json!({
            "params": self.params,
            "checks": self.checks,
            "table": self.table,
        })
    }

    /// Compact serialization of [`Self::body`] with sorted keys.
    pub fn canonical_body(&self) -> String {
        self.body().to_string()
    }

    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.canonical_body().as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_json(&self) -> String {
        let runtime: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "runtime_ms": c.runtime.as_millis() as u64}))
            .collect();
        let doc = json!({
            "schema": SCHEMA,
            "body": self.body(),
            "sha256": self.digest(),
            "runtime": {
                "total_ms": self.total_runtime.as_millis() as u64,
                "checks": runtime,
            },
        });
        let mut out = serde_json::to_string_pretty(&doc).expect("certificate serializes");
        out.push('\n');
        out
    }

    /// The table if there is one, otherwise one row per check.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| LtvError::Config(format!("csv: {e}"));
        match &self.table {
            Some(t) => {
                w.write_record(&t.columns).map_err(io)?;
                for row in &t.rows {
                    w.write_record(row).map_err(io)?;
                }
            }
            None => {
                w.write_record(["name", "anchor", "range", "status", "witness", "runtime_ms"]).map_err(io)?;
                for c in &self.checks {
                    w.write_record([
                        c.name.as_str(),
                        c.anchor.as_str(),
                        c.range.as_str(),
                        c.status.as_str(),
                        c.witness.as_deref().unwrap_or(""),
                        &c.runtime.as_millis().to_string(),
                    ])
                    .map_err(io)?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| LtvError::Config(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| LtvError::Config(format!("csv: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(runtime_ms: u64) -> Certificate {
        let mut t = Table::new(&["n", "value"]);
        t.push(vec!["0".into(), "1".into()]);
        let check = Check::new("c", "anchor", "n<=0", Status::Pass, None)
            .with_runtime(Duration::from_millis(runtime_ms));
        Certificate {
            params: CertParams {
                command: "test".into(),
                p: 2,
                f: 1,
                e: 1,
                q: 2,
                max_n: 0,
                disc_s: 0,
                tier: 1,
            },
            checks: vec![check],
            table: Some(t),
            total_runtime: Duration::from_millis(runtime_ms),
        }
    }

    #[test]
    fn digest_ignores_runtime() {
        let (a, b) = (sample(1), sample(999));
        assert_eq!(a.digest(), b.digest());
        assert_ne!(a.to_json(), b.to_json());
        assert_eq!(a.digest().len(), 64);
        let doc: Value = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(doc["schema"], SCHEMA);
        assert_eq!(doc["body"]["checks"][0]["status"], "pass");
    }

    #[test]
    fn canonical_keys_sorted() {
        let body = sample(0).canonical_body();
        let (c, p, t) = (body.find("\"checks\"").unwrap(), body.find("\"params\"").unwrap(), body.find("\"table\"").unwrap());
        assert!(c < p && p < t);
    }

    #[test]
    fn exit_codes() {
        let mut c = sample(0);
        assert_eq!(c.exit_code(), 0);
        c.checks.push(Check::skipped("s", "a", "r", "why"));
        assert_eq!(c.exit_code(), 0);
        c.checks.push(Check::new("f", "a", "r", Status::Fail, Some("w".into())));
        assert_eq!(c.exit_code(), 2);
    }

    #[test]
    fn csv_has_header() {
        let mut c = sample(0);
        assert_eq!(c.to_csv().unwrap(), "n,value\n0,1\n");
        c.table = None;
        let out = c.to_csv().unwrap();
        assert!(out.starts_with("name,anchor,range,status,witness,runtime_ms\n"));
    }

    #[test]
    fn aggregate_reports_first_failure() {
        let fs = vec![Finding::pass("a"), Finding::fail("b", "x"), Finding::fail("c", "y")];
        let c = Check::aggregate("all", "anchor", "r", &fs);
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.witness.as_deref(), Some("b: x"));
    }
}

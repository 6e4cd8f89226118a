//! Verification reports shared by the check suites and the CLI.

use serde::Serialize;
use serde_json::{Map, Value};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Unknown,
    Fail,
    OutOfScope,
}

impl Status {
    /// Combined status of two sub-results; `fail` dominates, then `unknown`.
    pub fn and(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Unknown, _) | (_, Status::Unknown) => Status::Unknown,
            (Status::OutOfScope, s) | (s, Status::OutOfScope) => s,
            _ => Status::Pass,
        }
    }

    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// One named sub-check with its evidence.
#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    pub name: String,
    pub status: Status,
    /// Informational findings record observations without affecting the verdict.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub informational: bool,
    pub detail: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub tool_version: String,
    pub check_id: String,
    pub subject: String,
    pub params: Map<String, Value>,
    pub status: Status,
    pub witnesses: Vec<Finding>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn new(check_id: &str, subject: &str) -> Self {
        VerificationReport {
            tool_version: TOOL_VERSION.to_string(),
            check_id: check_id.to_string(),
            subject: subject.to_string(),
            params: Map::new(),
            status: Status::Pass,
            witnesses: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.to_string(), serde_json::to_value(value).expect("param serializes"));
        self
    }

    pub fn set_param(&mut self, key: &str, value: impl Serialize) {
        self.params.insert(key.to_string(), serde_json::to_value(value).expect("param serializes"));
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, detail: impl Serialize) {
        self.status = self.status.and(status);
        self.witnesses.push(Finding {
            name: name.into(),
            status,
            informational: false,
            detail: serde_json::to_value(detail).expect("detail serializes"),
        });
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Serialize) {
        self.push(name, Status::from_bool(ok), detail);
    }

    /// Records an observation that does not change the overall status.
    pub fn note(&mut self, name: impl Into<String>, status: Status, detail: impl Serialize) {
        self.witnesses.push(Finding {
            name: name.into(),
            status,
            informational: true,
            detail: serde_json::to_value(detail).expect("detail serializes"),
        });
    }

    pub fn failures(&self) -> impl Iterator<Item = &Finding> {
        self.witnesses.iter().filter(|f| !f.informational && f.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_ndjson_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

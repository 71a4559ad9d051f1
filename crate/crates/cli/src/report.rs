//! Structured report schema, versioned for golden-file diffing.
//!
//! Identical `(argv, seed)` pairs produce byte-identical reports except
//! for the `wall_time_ms` field; check records are ordered by trial index
//! regardless of execution order.

use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "symflag-report/1";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Config {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<usize>>,
    pub backend: String,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub epsilon: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
}

/// One check: what was verified, the mathematical claim it instantiates,
/// and the outcome.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CheckRecord {
    pub name: String,
    pub claim: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<serde_json::Value>,
}

impl CheckRecord {
    pub fn pass(name: impl Into<String>, claim: impl Into<String>) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            claim: claim.into(),
            status: "pass".into(),
            residual: None,
            values: None,
        }
    }

    pub fn fail(name: impl Into<String>, claim: impl Into<String>) -> CheckRecord {
        CheckRecord {
            status: "fail".into(),
            ..CheckRecord::pass(name, claim)
        }
    }

    pub fn with_residual(mut self, residual: impl Into<String>) -> CheckRecord {
        self.residual = Some(residual.into());
        self
    }

    pub fn with_values(mut self, values: serde_json::Value) -> CheckRecord {
        self.values = Some(values);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub config: Config,
    pub checks: Vec<CheckRecord>,
    pub summary: String,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn new(command: impl Into<String>, config: Config, checks: Vec<CheckRecord>) -> Report {
        let all_pass = checks.iter().all(CheckRecord::passed);
        Report {
            schema: SCHEMA.into(),
            command: command.into(),
            config,
            checks,
            summary: if all_pass { "pass" } else { "fail" }.into(),
            wall_time_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary == "pass"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

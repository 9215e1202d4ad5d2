//! Run reports: JSON schema version 1 and the plain-text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use qsum_core::check::{Outcome, Param};
use qsum_core::CheckResult;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// The command line as the run understood it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub command: String,
    pub target: String,
    pub options: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    pub params: Vec<(String, Param)>,
    #[serde(flatten)]
    pub outcome: Outcome,
    pub wall_time_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
}

impl Record {
    pub fn new(result: CheckResult, wall_time_ms: f64, detail: Option<serde_json::Value>) -> Self {
        Self { id: result.check, params: result.params, outcome: result.outcome, wall_time_ms, detail }
    }

    pub fn status(&self) -> &'static str {
        match self.outcome {
            Outcome::Verified => "verified",
            Outcome::Counterexample { .. } => "counterexample",
            Outcome::Skipped { .. } => "skipped",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub verified: usize,
    pub counterexample: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn exit_code(&self) -> i32 {
        if self.counterexample > 0 {
            1
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: ConfigEcho,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: ConfigEcho, records: Vec<Record>) -> Self {
        let mut summary = Summary { total: records.len(), ..Summary::default() };
        for r in &records {
            match r.outcome {
                Outcome::Verified => summary.verified += 1,
                Outcome::Counterexample { .. } => summary.counterexample += 1,
                Outcome::Skipped { .. } => summary.skipped += 1,
            }
        }
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            records,
            summary,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.summary.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = write!(out, "{} [{}] {}", r.id, params.join(" "), r.status());
            match &r.outcome {
                Outcome::Counterexample { witness } => {
                    let _ = write!(out, ": {witness}");
                }
                Outcome::Skipped { reason } => {
                    let _ = write!(out, ": {reason}");
                }
                Outcome::Verified => {}
            }
            let _ = writeln!(out, " ({:.2} ms)", r.wall_time_ms);
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{} {}: {} checks, {} verified, {} counterexamples, {} skipped",
            self.config.command, self.config.target, s.total, s.verified, s.counterexample, s.skipped
        );
        out
    }
}

//! The JSON report written by every run.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const TOOL: &str = "gsb";

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ErrorInfo {
    pub code: String,
    pub message: String,
}

/// One run's report. Everything except `timing_ms` is a function of the
/// command line and the input bytes.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    pub input_digest: Option<String>,
    pub outcome: String,
    pub exit_code: i32,
    pub error: Option<ErrorInfo>,
    /// Display letter to full generator name, when aliases are in use.
    pub aliases: Option<BTreeMap<String, String>>,
    pub warnings: Vec<String>,
    pub result: Value,
    pub timing_ms: u64,
}

impl ReportDocument {
    pub fn new(command: Vec<String>) -> Self {
        ReportDocument {
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            input_digest: None,
            outcome: "ok".to_string(),
            exit_code: 0,
            error: None,
            aliases: None,
            warnings: Vec::new(),
            result: Value::Null,
            timing_ms: 0,
        }
    }

    pub fn fail(&mut self, err: &CliError) {
        self.outcome = "error".to_string();
        self.exit_code = err.exit_code();
        self.error = Some(ErrorInfo {
            code: err.code().to_string(),
            message: err.to_string(),
        });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// The report without its timing field, for determinism checks.
    pub fn payload(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("timing_ms");
        v
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

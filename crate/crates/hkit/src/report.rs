//! JSON reports written by every command.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub code: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_us: u64,
}

/// One report per invocation. Exactly one of `result` and `error` is set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub input: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Report {
    pub fn new(command: &str, input: Value) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            input,
            result: None,
            error: None,
            notes: Vec::new(),
            timing: None,
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values are plain JSON");
        s.push('\n');
        s
    }
}

/// The report with its timing removed, re-serialized. Two runs of the same
/// job produce identical canonical text.
pub fn canonical(text: &str) -> Result<String, serde_json::Error> {
    let mut report: Report = serde_json::from_str(text)?;
    report.timing = None;
    Ok(report.to_json())
}

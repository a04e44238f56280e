//! Experiment reports and their on-disk forms.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Provenance {
    /// Stated in the source paper.
    Paper,
    /// Follows directly from the definitions.
    Trivial,
    /// Computed by an independent oracle.
    Derived,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    pub value: Value,
    pub provenance: Provenance,
}

/// One checked instance inside a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
    pub computed: Value,
    pub pass: bool,
}

impl Row {
    /// Passes iff `computed` equals `expected` exactly.
    pub fn check(label: impl Into<String>, expected: impl Into<Value>, provenance: Provenance, computed: impl Into<Value>) -> Self {
        let (expected, computed) = (expected.into(), computed.into());
        Self {
            label: label.into(),
            pass: expected == computed,
            expected: Some(Expected { value: expected, provenance }),
            computed,
        }
    }

    /// A value recorded without an expectation.
    pub fn record(label: impl Into<String>, computed: impl Into<Value>) -> Self {
        Self {
            label: label.into(),
            expected: None,
            computed: computed.into(),
            pass: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Nothing was compared against an expectation.
    Recorded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub statement: Option<String>,
    pub parameters: Value,
    pub rows: Vec<Row>,
    pub verdict: Verdict,
    pub witnesses: Vec<Value>,
    pub configs_checked: u64,
    pub warnings: Vec<String>,
    pub seed: u64,
    pub version: String,
    pub wall_time_s: f64,
}

impl ExperimentReport {
    pub fn new(command: &str, parameters: Value, seed: u64) -> Self {
        Self {
            command: command.to_string(),
            claim: None,
            statement: None,
            parameters,
            rows: Vec::new(),
            verdict: Verdict::Recorded,
            witnesses: Vec::new(),
            configs_checked: 0,
            warnings: Vec::new(),
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_s: 0.0,
        }
    }

    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
        self.verdict = if self.rows.iter().all(|r| r.expected.is_none()) {
            Verdict::Recorded
        } else if self.rows.iter().all(|r| r.pass) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per row.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["command", "claim", "row", "expected", "provenance", "computed", "pass"])?;
        for row in &self.rows {
            let (expected, provenance) = match &row.expected {
                Some(e) => (e.value.to_string(), format!("{:?}", e.provenance).to_uppercase()),
                None => (String::new(), String::new()),
            };
            w.write_record([
                self.command.as_str(),
                self.claim.as_deref().unwrap_or(""),
                &row.label,
                &expected,
                &provenance,
                &row.computed.to_string(),
                if row.pass { "true" } else { "false" },
            ])?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

/// Writes via a temporary file in the same directory and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::doc::SCHEMA_VERSION;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

impl InputDigest {
    pub fn of(path: &Path) -> Result<Self> {
        let data = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
        Ok(InputDigest {
            path: path.display().to_string(),
            sha256: format!("{:x}", Sha256::digest(&data)),
            bytes: data.len() as u64,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

/// Outcome of one command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub verdicts: Vec<Verdict>,
    #[serde(default)]
    pub counterexamples: Vec<Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Left out by `fuzz` so that its reports are reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub details: Value,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs: Vec::new(),
            verdicts: Vec::new(),
            counterexamples: Vec::new(),
            notes: Vec::new(),
            timing: None,
            details: Value::Null,
        }
    }

    pub fn input(&mut self, path: &Path) -> Result<()> {
        self.inputs.push(InputDigest::of(path)?);
        Ok(())
    }

    pub fn verdict(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict { name: name.into(), pass, detail: detail.into() });
    }

    pub fn set_elapsed(&mut self, d: Duration) {
        self.timing = Some(Timing { elapsed_ms: d.as_secs_f64() * 1e3 });
    }

    pub fn pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        crate::doc::to_json_pretty(self)
    }

    pub fn summary(&self) -> String {
        let mut s = format!("sspforge {}\n", self.command);
        for i in &self.inputs {
            let _ = writeln!(s, "  input {} ({} bytes, sha256 {})", i.path, i.bytes, &i.sha256[..16]);
        }
        for v in &self.verdicts {
            let _ = writeln!(s, "  {} {}: {}", if v.pass { "PASS" } else { "FAIL" }, v.name, v.detail);
        }
        for n in &self.notes {
            let _ = writeln!(s, "  {n}");
        }
        if !self.counterexamples.is_empty() {
            let _ = writeln!(s, "  {} counterexample(s) in the JSON report", self.counterexamples.len());
        }
        let _ = write!(s, "result: {}", if self.pass() { "PASS" } else { "FAIL" });
        if let Some(t) = &self.timing {
            let _ = write!(s, " in {:.1} ms", t.elapsed_ms);
        }
        s.push('\n');
        s
    }
}

//! Lab report: JSON primary, CSV flat export and graph6 sidecar next to it.

use anyhow::{Context, Result};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::Path;

/// assert: must hold at desk scale (exact formulas, unconditional
/// inequalities) — failures flip the exit code. observe: asymptotic
/// statements reported as data, never asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckClass {
    Assert,
    Observe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Observe,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub name: String,
    /// The mathematical statement behind the check, in plain ASCII.
    pub anchor: String,
    pub class: CheckClass,
    pub status: CheckStatus,
    pub details: serde_json::Value,
}

#[derive(Debug, Serialize)]
pub struct LabReport {
    pub command: String,
    pub config: serde_json::Value,
    pub checks: Vec<CheckRow>,
    /// Graphs referenced by the checks, label -> graph6.
    pub graphs: BTreeMap<String, String>,
    pub timing_ms: u128,
    pub version: String,
}

impl LabReport {
    pub fn new(command: &str, config: serde_json::Value) -> Self {
        LabReport {
            command: command.to_string(),
            config,
            checks: Vec::new(),
            graphs: BTreeMap::new(),
            timing_ms: 0,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn assert_check(
        &mut self,
        name: impl Into<String>,
        anchor: impl Into<String>,
        pass: bool,
        details: serde_json::Value,
    ) {
        self.checks.push(CheckRow {
            name: name.into(),
            anchor: anchor.into(),
            class: CheckClass::Assert,
            status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
            details,
        });
    }

    pub fn observe(
        &mut self,
        name: impl Into<String>,
        anchor: impl Into<String>,
        details: serde_json::Value,
    ) {
        self.checks.push(CheckRow {
            name: name.into(),
            anchor: anchor.into(),
            class: CheckClass::Observe,
            status: CheckStatus::Observe,
            details,
        });
    }

    pub fn add_graph(&mut self, label: impl Into<String>, g6: impl Into<String>) {
        self.graphs.insert(label.into(), g6.into());
    }

    /// True iff no assert-class check failed.
    pub fn clean(&self) -> bool {
        !self
            .checks
            .iter()
            .any(|c| c.class == CheckClass::Assert && c.status == CheckStatus::Fail)
    }

    /// Write JSON to `out`, plus `.csv` and `.g6` sidecars with the same stem.
    pub fn write_files(&self, out: &Path) -> Result<()> {
        if let Some(dir) = out.parent() {
            if !dir.as_os_str().is_empty() {
                std::fs::create_dir_all(dir).with_context(|| format!("create {}", dir.display()))?;
            }
        }
        let json = serde_json::to_string_pretty(self)?;
        std::fs::write(out, json).with_context(|| format!("write {}", out.display()))?;

        let csv_path = out.with_extension("csv");
        let mut w = csv::Writer::from_path(&csv_path)
            .with_context(|| format!("open {}", csv_path.display()))?;
        w.write_record(["name", "anchor", "class", "status", "details"])?;
        for c in &self.checks {
            w.write_record([
                c.name.as_str(),
                c.anchor.as_str(),
                match c.class {
                    CheckClass::Assert => "assert",
                    CheckClass::Observe => "observe",
                },
                match c.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "fail",
                    CheckStatus::Observe => "observe",
                },
                &c.details.to_string(),
            ])?;
        }
        w.flush()?;

        let g6_path = out.with_extension("g6");
        let mut sidecar = String::new();
        for g6 in self.graphs.values() {
            sidecar.push_str(g6);
            sidecar.push('\n');
        }
        std::fs::write(&g6_path, sidecar).with_context(|| format!("write {}", g6_path.display()))?;
        Ok(())
    }

    pub fn print_stdout(&self) -> Result<()> {
        println!("{}", serde_json::to_string_pretty(self)?);
        Ok(())
    }
}

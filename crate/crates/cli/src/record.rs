//! Run provenance: scenario hash, timing, outcome, emitted files.
//!
//! The scenario hash covers the canonical serialization of the scientific
//! content (kind, certificate or physics parameters, sweep axis) and
//! deliberately excludes the output directory, so the same experiment
//! hashes identically wherever its artifacts land. Wall-clock timestamps
//! appear only in the record file; every CSV, report, and plot is a pure
//! function of the scenario.

use crate::config::{serialize, Scenario};
use anyhow::{Context, Result};
use sha2::{Digest, Sha256};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

/// Provenance of one completed run.
#[derive(Debug, Clone)]
pub struct RunRecord {
    /// SHA-256 of the canonical scenario serialization, hex encoded.
    pub scenario_hash: String,
    /// Version of this tool.
    pub tool_version: &'static str,
    /// Unix seconds at scenario start.
    pub started_unix: u64,
    /// Unix seconds at scenario end.
    pub finished_unix: u64,
    /// One-line outcome summary.
    pub outcome: String,
    /// Files emitted into the output directory, relative names.
    pub files: Vec<PathBuf>,
}

/// Hex SHA-256 of the scenario's scientific content.
pub fn scenario_hash(scenario: &Scenario) -> String {
    let mut canonical = scenario.clone();
    canonical.output_dir = PathBuf::new();
    let text = serialize(&canonical);
    let digest = Sha256::digest(text.as_bytes());
    let mut hex = String::with_capacity(64);
    for byte in digest {
        hex.push_str(&format!("{byte:02x}"));
    }
    hex
}

/// Current wall clock in unix seconds.
pub fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

impl RunRecord {
    /// Writes the record as `key = value` lines plus one `file = ` line
    /// per artifact.
    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = String::new();
        text.push_str(&format!("scenario_hash = {}\n", self.scenario_hash));
        text.push_str(&format!("tool_version = {}\n", self.tool_version));
        text.push_str(&format!("started_unix = {}\n", self.started_unix));
        text.push_str(&format!("finished_unix = {}\n", self.finished_unix));
        text.push_str(&format!("outcome = {}\n", self.outcome));
        for file in &self.files {
            text.push_str(&format!("file = {}\n", file.display()));
        }
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }
}

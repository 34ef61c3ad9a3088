//! Artifact rendering. JSON reports wrap the payload with the resolved config
//! and artifact version; CSV files carry the same as leading `#` lines.

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use hadamard_core::ARTIFACT_VERSION;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{ExperimentConfig, Format};
use crate::CliError;

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub struct Artifact {
    pub command: &'static str,
    pub payload: Value,
    pub table: Table,
}

impl Artifact {
    pub fn new(command: &'static str, payload: impl Serialize, table: Table) -> Self {
        Self { command, payload: serde_json::to_value(payload).expect("payload serializes"), table }
    }
}

/// `{:.16e}`: 17 significant digits, enough to round-trip any `f64`.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn timestamp() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

pub fn render(artifact: &Artifact, cfg: &ExperimentConfig, format: Format) -> String {
    match format {
        Format::Json => {
            let mut doc = json!({
                "command": artifact.command,
                "artifact_version": ARTIFACT_VERSION,
                "config": cfg,
                "result": artifact.payload,
            });
            if !cfg.no_timestamp {
                doc["timestamp"] = json!(timestamp());
            }
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = format!("# command: {}\n# artifact_version: {ARTIFACT_VERSION}\n", artifact.command);
            if !cfg.no_timestamp {
                s += &format!("# timestamp: {}\n", timestamp());
            }
            for line in cfg.to_toml().lines() {
                s += &format!("# config: {line}\n");
            }
            s += &artifact.table.header.join(",");
            s.push('\n');
            for row in &artifact.table.rows {
                s += &row.join(",");
                s.push('\n');
            }
            s
        }
    }
}

pub fn emit(text: &str, cfg: &ExperimentConfig) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
        }
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::usage(format!("cannot write to stdout: {e}"))),
    }
}

// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

//! Output directory with JSON and CSV artifacts and a manifest.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct Artifact {
    pub path: String,
    pub kind: &'static str,
    pub description: String,
}

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub command: String,
    pub version: &'static str,
    pub parallel: bool,
    pub status: String,
    pub exit_code: i32,
    pub runtime_seconds: f64,
    pub artifacts: Vec<Artifact>,
}

pub struct OutputDir {
    root: PathBuf,
    artifacts: Vec<Artifact>,
}

impl OutputDir {
    pub fn create(root: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(root).map_err(|e| CliError::Io(format!("cannot create {}: {e}", root.display())))?;
        Ok(Self { root: root.to_path_buf(), artifacts: Vec::new() })
    }

    fn record(&mut self, name: &str, kind: &'static str, description: &str) -> PathBuf {
        self.artifacts.push(Artifact { path: name.into(), kind, description: description.into() });
        self.root.join(name)
    }

    pub fn json<T: Serialize>(&mut self, name: &str, description: &str, value: &T) -> Result<(), CliError> {
        let path = self.record(name, "json", description);
        let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
        write(&path, text)
    }

    pub fn text(&mut self, name: &str, kind: &'static str, description: &str, body: &str) -> Result<(), CliError> {
        let path = self.record(name, kind, description);
        write(&path, body.to_string())
    }

    /// CSV with a header row. Missing values are written as empty fields.
    pub fn csv(&mut self, name: &str, description: &str, header: &[String], rows: &[Vec<Option<f64>>]) -> Result<(), CliError> {
        let path = self.record(name, "csv", description);
        let io = |e: csv::Error| CliError::Io(format!("{}: {e}", path.display()));
        let mut w = csv::Writer::from_path(&path).map_err(io)?;
        w.write_record(header).map_err(io)?;
        for row in rows {
            w.write_record(row.iter().map(|v| v.map(|v| v.to_string()).unwrap_or_default())).map_err(io)?;
        }
        w.flush().map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn finish(self, command: &str, exit_code: i32, status: &str, runtime_seconds: f64) -> Result<(), CliError> {
        let manifest = Manifest {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION"),
            parallel: maser::par::PARALLEL,
            status: status.into(),
            exit_code,
            runtime_seconds,
            artifacts: self.artifacts,
        };
        let text = serde_json::to_string_pretty(&manifest).map_err(|e| CliError::Io(e.to_string()))?;
        write(&self.root.join("manifest.json"), text)
    }
}

fn write(path: &Path, text: String) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

pub fn header(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

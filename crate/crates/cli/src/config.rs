// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

//! Scenario files: a device in lab units plus solver and scenario sections.

use std::path::Path;

use maser::dynamics::{EvolveOptions, SteadyOptions};
use maser::model::{DeviceConfig, SystemParams, UNITS_HEADER};
use maser::scenarios::SweepOptions;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepFlags {
    pub keep_fock: bool,
    pub check_truncation: bool,
}

impl Default for SweepFlags {
    fn default() -> Self {
        Self { keep_fock: false, check_truncation: true }
    }
}

/// One run: `[device]`, `[solver]`, `[evolve]`, `[sweep]` and the
/// subcommand-specific `[scenario]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig<S> {
    pub device: Option<DeviceConfig>,
    pub solver: SteadyOptions,
    pub evolve: EvolveOptions,
    pub sweep: SweepFlags,
    pub scenario: S,
}

impl<S: Default> Default for RunConfig<S> {
    fn default() -> Self {
        Self {
            device: None,
            solver: SteadyOptions::default(),
            evolve: EvolveOptions::default(),
            sweep: SweepFlags::default(),
            scenario: S::default(),
        }
    }
}

impl<S: Serialize + DeserializeOwned + Default> RunConfig<S> {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Config(format!("cannot read {}: {e}", p.display())))?;
                toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))
            }
        }
    }

    /// Device parameters, falling back to `default` when the file has no
    /// `[device]` section. The result survives a round trip through
    /// [`DeviceConfig`] unchanged, so the resolved config reproduces it.
    pub fn params(&self, default: SystemParams) -> Result<SystemParams, CliError> {
        let p = match &self.device {
            Some(d) => d.to_params().map_err(|e| CliError::Config(e.to_string()))?,
            None => default,
        };
        canonical(p)
    }

    pub fn sweep_options(&self) -> SweepOptions {
        SweepOptions { steady: self.solver, keep_fock: self.sweep.keep_fock, check_truncation: self.sweep.check_truncation }
    }

    /// The same run with every default spelled out and `params` as device.
    pub fn resolved(&self, params: &SystemParams) -> Self
    where
        S: Clone,
    {
        Self { device: Some(DeviceConfig::from_params(params)), ..self.clone() }
    }

    pub fn to_toml(&self) -> Result<String, CliError> {
        let body = toml::to_string(self).map_err(|e| CliError::Config(e.to_string()))?;
        Ok(format!("{UNITS_HEADER}\n{body}"))
    }
}

/// Fixed point of the lab-unit round trip.
pub fn canonical(mut p: SystemParams) -> Result<SystemParams, CliError> {
    for _ in 0..8 {
        let q = DeviceConfig::from_params(&p).to_params().map_err(|e| CliError::Config(e.to_string()))?;
        if q == p {
            return Ok(p);
        }
        p = q;
    }
    Err(CliError::Config("device parameters do not survive a round trip through lab units".into()))
}

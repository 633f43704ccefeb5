// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

//! Device description in lab units.
//!
//! Frequencies, couplings and the drive amplitude are linear MHz
//! (`f = omega / 2pi`); decay rates are us^-1. Conversion to the internal
//! angular units happens once, in [`DeviceConfig::to_params`].

use serde::{Deserialize, Serialize};

use super::params::{mhz, to_mhz, Dims, SystemParams, Variant};
use crate::error::{Error, Result};

pub const UNITS_HEADER: &str = "\
# Units: frequencies, couplings and drive amplitude in MHz (linear, f = omega/2pi);
# decay and dephasing rates in us^-1. Subsystem order: transmon, auxiliary, reservoir.
";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransmonSection {
    pub f_ge: f64,
    pub alpha: f64,
    pub gamma: f64,
    #[serde(default)]
    pub gamma_phi: f64,
    pub levels: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CavitySection {
    pub f: f64,
    pub g: f64,
    pub kappa: f64,
    pub levels: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveSection {
    /// Drive frequency; `None` selects `f_gf / 2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<f64>,
    pub amplitude: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviceConfig {
    pub transmon: TransmonSection,
    pub auxiliary: CavitySection,
    pub reservoir: CavitySection,
    pub drive: DriveSection,
    #[serde(default)]
    pub variant: Variant,
}

impl DeviceConfig {
    pub fn to_params(&self) -> Result<SystemParams> {
        let t = &self.transmon;
        let omega_ge = mhz(t.f_ge);
        let alpha = mhz(t.alpha);
        let omega_d = match self.drive.f {
            Some(f) => mhz(f),
            None => omega_ge + alpha / 2.0,
        };
        let p = SystemParams {
            omega_ge,
            alpha,
            omega_r: mhz(self.reservoir.f),
            omega_a: mhz(self.auxiliary.f),
            omega_d,
            drive: mhz(self.drive.amplitude),
            g_r: mhz(self.reservoir.g),
            g_a: mhz(self.auxiliary.g),
            kappa_r: self.reservoir.kappa,
            kappa_a: self.auxiliary.kappa,
            gamma: t.gamma,
            gamma_phi: t.gamma_phi,
            dims: Dims::new(t.levels, self.auxiliary.levels, self.reservoir.levels),
            variant: self.variant,
        };
        p.validate().map_err(|e| Error::Config(e.to_string()))?;
        Ok(p)
    }

    /// Fully resolved description of `p` (the drive frequency is explicit).
    pub fn from_params(p: &SystemParams) -> Self {
        Self {
            transmon: TransmonSection {
                f_ge: to_mhz(p.omega_ge),
                alpha: to_mhz(p.alpha),
                gamma: p.gamma,
                gamma_phi: p.gamma_phi,
                levels: p.dims.n_t,
            },
            auxiliary: CavitySection {
                f: to_mhz(p.omega_a),
                g: to_mhz(p.g_a),
                kappa: p.kappa_a,
                levels: p.dims.n_a,
            },
            reservoir: CavitySection {
                f: to_mhz(p.omega_r),
                g: to_mhz(p.g_r),
                kappa: p.kappa_r,
                levels: p.dims.n_r,
            },
            drive: DriveSection { f: Some(to_mhz(p.omega_d)), amplitude: to_mhz(p.drive) },
            variant: p.variant,
        }
    }

    pub fn to_toml(&self) -> Result<String> {
        let body = toml::to_string(self).map_err(|e| Error::Config(e.to_string()))?;
        Ok(format!("{UNITS_HEADER}\n{body}"))
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }
}

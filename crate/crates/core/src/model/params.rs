// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::HilbertSpace;

/// Linear frequency in MHz to angular frequency in rad/us.
pub fn mhz(f: f64) -> f64 {
    TAU * f
}

/// Angular frequency in rad/us to linear MHz.
pub fn to_mhz(w: f64) -> f64 {
    w / TAU
}

/// Which transmon operator enters the reservoir interaction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    #[default]
    Standard,
    UnityLowering,
}

/// Truncations `(n_t, n_a, n_r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dims {
    pub n_t: usize,
    pub n_a: usize,
    pub n_r: usize,
}

impl Dims {
    pub fn new(n_t: usize, n_a: usize, n_r: usize) -> Self {
        Self { n_t, n_a, n_r }
    }

    pub fn total(&self) -> usize {
        self.n_t * self.n_a * self.n_r
    }
}

/// Physical parameters and truncations of one maser instance.
///
/// Frequencies, couplings and the drive amplitude are angular (rad/us);
/// `kappa_*`, `gamma`, `gamma_phi` are rates in us^-1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub omega_ge: f64,
    pub alpha: f64,
    pub omega_r: f64,
    pub omega_a: f64,
    pub omega_d: f64,
    /// Drive amplitude.
    pub drive: f64,
    pub g_r: f64,
    pub g_a: f64,
    pub kappa_r: f64,
    pub kappa_a: f64,
    pub gamma: f64,
    #[serde(default)]
    pub gamma_phi: f64,
    pub dims: Dims,
    #[serde(default)]
    pub variant: Variant,
}

impl SystemParams {
    /// Resonant configuration: `omega_r = omega_ge`, `omega_a = omega_ef`,
    /// `omega_d = omega_gf / 2`. Rates, couplings and drive start at zero.
    pub fn ideal(omega_ge: f64, alpha: f64, n_r: usize) -> Self {
        Self {
            omega_ge,
            alpha,
            omega_r: omega_ge,
            omega_a: omega_ge + alpha,
            omega_d: omega_ge + alpha / 2.0,
            drive: 0.0,
            g_r: 0.0,
            g_a: 0.0,
            kappa_r: 0.0,
            kappa_a: 0.0,
            gamma: 0.0,
            gamma_phi: 0.0,
            dims: Dims::new(4, 2, n_r),
            variant: Variant::Standard,
        }
    }

    /// Optimal device reported for the two-photon maser (6 GHz transmon,
    /// -200 MHz anharmonicity, 25 MHz drive).
    pub fn paper_optimum(n_r: usize) -> Self {
        Self {
            drive: mhz(25.0),
            g_r: mhz(6.5),
            g_a: mhz(23.5),
            kappa_r: 0.31,
            kappa_a: 138.0,
            gamma: 0.1,
            ..Self::ideal(mhz(6000.0), mhz(-200.0), n_r)
        }
    }

    /// Coupling-plane device with `kappa_r = 0.2`, `kappa_a = 138`,
    /// `gamma = 0.1`, couplings given in MHz.
    pub fn coupling_point(g_r_mhz: f64, g_a_mhz: f64, drive_mhz: f64, n_r: usize) -> Self {
        Self {
            drive: mhz(drive_mhz),
            g_r: mhz(g_r_mhz),
            g_a: mhz(g_a_mhz),
            kappa_r: 0.2,
            kappa_a: 138.0,
            gamma: 0.1,
            ..Self::ideal(mhz(6000.0), mhz(-200.0), n_r)
        }
    }

    pub fn omega_gf(&self) -> f64 {
        2.0 * self.omega_ge + self.alpha
    }

    pub fn omega_ef(&self) -> f64 {
        self.omega_ge + self.alpha
    }

    /// Transmon detuning from the drive.
    pub fn delta(&self) -> f64 {
        self.omega_ge - self.omega_d
    }

    pub fn delta_r(&self) -> f64 {
        self.omega_r - self.omega_d
    }

    pub fn delta_a(&self) -> f64 {
        self.omega_a - self.omega_d
    }

    pub fn space(&self) -> Result<HilbertSpace> {
        HilbertSpace::new(vec![self.dims.n_t, self.dims.n_a, self.dims.n_r])
    }

    pub fn with_n_r(mut self, n_r: usize) -> Self {
        self.dims.n_r = n_r;
        self
    }

    pub fn with_drive_mhz(mut self, drive_mhz: f64) -> Self {
        self.drive = mhz(drive_mhz);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let named = [
            ("omega_ge", self.omega_ge),
            ("alpha", self.alpha),
            ("omega_r", self.omega_r),
            ("omega_a", self.omega_a),
            ("omega_d", self.omega_d),
            ("drive", self.drive),
            ("g_r", self.g_r),
            ("g_a", self.g_a),
            ("kappa_r", self.kappa_r),
            ("kappa_a", self.kappa_a),
            ("gamma", self.gamma),
            ("gamma_phi", self.gamma_phi),
        ];
        if let Some((name, _)) = named.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidParams(format!("{name} is not finite")));
        }
        if self.alpha >= 0.0 {
            return Err(Error::InvalidParams(format!("alpha must be negative, got {}", self.alpha)));
        }
        for (name, v) in [
            ("kappa_r", self.kappa_r),
            ("kappa_a", self.kappa_a),
            ("gamma", self.gamma),
            ("gamma_phi", self.gamma_phi),
            ("g_r", self.g_r),
            ("g_a", self.g_a),
        ] {
            if v < 0.0 {
                return Err(Error::InvalidParams(format!("{name} must be >= 0, got {v}")));
            }
        }
        let d = self.dims;
        if d.n_t < 2 {
            return Err(Error::InvalidDimension { dim: d.n_t, min: 2 });
        }
        if d.n_r < 2 {
            return Err(Error::InvalidDimension { dim: d.n_r, min: 2 });
        }
        if d.n_a < 1 || (d.n_a == 1 && self.g_a != 0.0) {
            return Err(Error::InvalidParams(format!(
                "auxiliary dimension {} requires g_a = 0 (got {})",
                d.n_a, self.g_a
            )));
        }
        Ok(())
    }

    /// Two-level transmon with the auxiliary cavity removed.
    pub fn two_level_direct(&self) -> Self {
        Self { g_a: 0.0, dims: Dims::new(2, 1, self.dims.n_r), ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ideal_detunings() {
        let p = SystemParams::ideal(mhz(6000.0), mhz(-200.0), 10);
        assert_relative_eq!(to_mhz(p.delta()), 100.0, epsilon = 1e-9);
        assert_relative_eq!(to_mhz(p.delta_r()), 100.0, epsilon = 1e-9);
        assert_relative_eq!(to_mhz(p.delta_a()), -100.0, epsilon = 1e-9);
        assert_relative_eq!(p.delta_r(), -p.alpha / 2.0, epsilon = 1e-9);
        assert_relative_eq!(2.0 * p.delta() + p.alpha, 0.0, epsilon = 1e-9);
        assert_relative_eq!(p.omega_d, p.omega_gf() / 2.0);
    }

    #[test]
    fn validation() {
        let p = SystemParams::paper_optimum(10);
        p.validate().unwrap();
        let mut bad = p.clone();
        bad.alpha = 1.0;
        assert!(bad.validate().is_err());
        let mut bad = p.clone();
        bad.kappa_r = -0.1;
        assert!(bad.validate().is_err());
        let mut bad = p.clone();
        bad.dims.n_a = 1;
        assert!(bad.validate().is_err());
        p.two_level_direct().validate().unwrap();
    }

    #[test]
    fn two_level_direct_dims() {
        let p = SystemParams::paper_optimum(20).two_level_direct();
        assert_eq!(p.dims, Dims::new(2, 1, 20));
        assert_eq!(p.g_a, 0.0);
    }
}

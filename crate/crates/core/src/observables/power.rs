// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Reduced Planck constant in J s.
pub const HBAR: f64 = 1.054_571_817e-34;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EmittedPower {
    pub watts: f64,
    /// `-inf` for zero power; serialized as `null`.
    #[serde(serialize_with = "finite_or_null")]
    pub dbm: f64,
}

fn finite_or_null<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_none()
    }
}

/// `P = kappa_r N hbar omega_ge` with `kappa_r` in us^-1 and `omega_ge` in
/// rad/us.
pub fn emitted_power(n_ss: f64, kappa_r: f64, omega_ge: f64) -> Result<EmittedPower> {
    if !(n_ss >= 0.0 && kappa_r >= 0.0 && omega_ge >= 0.0) {
        return Err(Error::InvalidParams(format!(
            "emitted power needs non-negative inputs (N = {n_ss}, kappa_r = {kappa_r}, omega_ge = {omega_ge})"
        )));
    }
    let watts = kappa_r * 1e6 * n_ss * HBAR * omega_ge * 1e6;
    let dbm = if watts > 0.0 { 10.0 * (watts / 1e-3).log10() } else { f64::NEG_INFINITY };
    Ok(EmittedPower { watts, dbm })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::mhz;
    use approx::assert_relative_eq;

    #[test]
    fn optimum_power_level() {
        let p = emitted_power(49.0, 0.31, mhz(6000.0)).unwrap();
        assert!((p.dbm + 132.0).abs() < 1.0, "{}", p.dbm);
        let twice = emitted_power(98.0, 0.31, mhz(6000.0)).unwrap();
        assert_relative_eq!(twice.dbm - p.dbm, 10.0 * 2f64.log10(), epsilon = 1e-12);
    }

    #[test]
    fn zero_power() {
        let p = emitted_power(0.0, 0.31, mhz(6000.0)).unwrap();
        assert_eq!(p.watts, 0.0);
        assert_eq!(p.dbm, f64::NEG_INFINITY);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"watts":0.0,"dbm":null}"#);
        assert!(emitted_power(-1.0, 0.3, 1.0).is_err());
    }
}

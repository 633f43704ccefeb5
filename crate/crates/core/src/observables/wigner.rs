// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::quantum::{DensityMatrix, C64};

/// Square quadrature grid. Quadratures follow `alpha = (x + i p) / sqrt(2)`,
/// so the vacuum has `W(0, 0) = 1/pi` and unit integral.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct WignerSpec {
    pub extent: f64,
    pub points: usize,
    /// Widen the grid to `1.5 sqrt(2 <N> + 1)` when the state needs it.
    pub auto_expand: bool,
}

impl Default for WignerSpec {
    fn default() -> Self {
        Self { extent: 8.0, points: 201, auto_expand: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WignerGrid {
    pub x: Vec<f64>,
    pub p: Vec<f64>,
    /// `values[ip][ix]`.
    pub values: Vec<Vec<f64>>,
    /// Angle-averaged profile on `radii`.
    pub radii: Vec<f64>,
    pub radial_profile: Vec<f64>,
    pub expanded: bool,
    /// Grid step too large to resolve the highest populated Fock level.
    pub undersampled: bool,
}

impl WignerGrid {
    pub fn step(&self) -> f64 {
        if self.x.len() > 1 {
            self.x[1] - self.x[0]
        } else {
            0.0
        }
    }

    /// Riemann sum of `W dx dp`.
    pub fn integral(&self) -> f64 {
        let dx = self.step();
        let dp = if self.p.len() > 1 { self.p[1] - self.p[0] } else { 0.0 };
        self.values.iter().flatten().sum::<f64>() * dx * dp
    }

    pub fn value_at_origin(&self) -> Option<f64> {
        let ix = self.x.iter().position(|v| v.abs() < 1e-12)?;
        let ip = self.p.iter().position(|v| v.abs() < 1e-12)?;
        Some(self.values[ip][ix])
    }

    /// Marginal over p: the position distribution on `x`.
    pub fn x_marginal(&self) -> Vec<f64> {
        let dp = if self.p.len() > 1 { self.p[1] - self.p[0] } else { 0.0 };
        (0..self.x.len()).map(|ix| self.values.iter().map(|row| row[ix]).sum::<f64>() * dp).collect()
    }

    /// Number of strict local maxima of the radial profile above 2% of its
    /// maximum.
    pub fn radial_maxima(&self) -> usize {
        count_radial_maxima(&self.radial_profile, 0.02)
    }
}

/// Normalized Laguerre functions
/// `l_m^k(B) = sqrt(m!/(m+k)!) L_m^k(B) B^(k/2) e^(-B/2)` for `m < len`.
fn laguerre_row(k: usize, b: f64, len: usize, out: &mut Vec<f64>) {
    out.clear();
    if len == 0 {
        return;
    }
    let kf = k as f64;
    let l0 = if k == 0 {
        (-b / 2.0).exp()
    } else if b == 0.0 {
        0.0
    } else {
        let ln_fact: f64 = (1..=k).map(|i| (i as f64).ln()).sum();
        (kf / 2.0 * b.ln() - b / 2.0 - ln_fact / 2.0).exp()
    };
    out.push(l0);
    if len > 1 {
        out.push((1.0 + kf - b) * l0 / (1.0 + kf).sqrt());
    }
    for m in 1..len.saturating_sub(1) {
        let mf = m as f64;
        let next = ((2.0 * mf + 1.0 + kf - b) * out[m] - (mf * (mf + kf)).sqrt() * out[m - 1])
            / ((mf + 1.0) * (mf + 1.0 + kf)).sqrt();
        out.push(next);
    }
}

/// Wigner function of a single-mode state at `(x, p)`.
pub fn wigner_at(rho: &DensityMatrix, x: f64, p: f64) -> f64 {
    let d = rho.dim();
    let b = 2.0 * (x * x + p * p);
    let phase = C64::new(x, p);
    let phase = if phase.norm() > 0.0 { phase / phase.norm() } else { C64::new(1.0, 0.0) };
    let mut row = Vec::with_capacity(d);
    let mut total = 0.0;
    let mut eikphi = C64::new(1.0, 0.0);
    for k in 0..d {
        laguerre_row(k, b, d - k, &mut row);
        let mut acc = C64::default();
        for (m, l) in row.iter().enumerate() {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            acc += rho.get(m, m + k) * (sign * l);
        }
        if k == 0 {
            total += acc.re;
        } else {
            total += 2.0 * (acc * eikphi).re;
        }
        eikphi *= phase;
    }
    total / PI
}

/// Exact angular average of `W` at radius `r`.
pub fn angular_average(rho: &DensityMatrix, r: f64) -> f64 {
    let mut row = Vec::new();
    laguerre_row(0, 2.0 * r * r, rho.dim(), &mut row);
    let s: f64 = row
        .iter()
        .enumerate()
        .map(|(m, l)| if m % 2 == 0 { 1.0 } else { -1.0 } * rho.get(m, m).re * l)
        .sum();
    s / PI
}

/// Strict local maxima above `rel_threshold` of the global maximum; the
/// first point counts when it exceeds its neighbour.
pub fn count_radial_maxima(profile: &[f64], rel_threshold: f64) -> usize {
    let max = profile.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(max > 0.0) {
        return 0;
    }
    let n = profile.len();
    (0..n)
        .filter(|&i| {
            let left = i == 0 || profile[i] > profile[i - 1];
            let right = i + 1 < n && profile[i] > profile[i + 1];
            left && right && profile[i] > rel_threshold * max
        })
        .count()
}

/// Wigner function of a single-mode state on a square grid. Rows are
/// evaluated concurrently.
pub fn wigner(rho: &DensityMatrix, spec: WignerSpec) -> Result<WignerGrid> {
    if rho.space().num_subsystems() != 1 {
        return Err(Error::Shape("Wigner function needs a single-mode state; take a partial trace first".into()));
    }
    if spec.points < 2 || !(spec.extent > 0.0) {
        return Err(Error::InvalidParams(format!(
            "Wigner grid needs extent > 0 and at least 2 points (got {} / {})",
            spec.extent, spec.points
        )));
    }
    let diag = rho.diagonal();
    let mean_n: f64 = diag.iter().enumerate().map(|(n, p)| n as f64 * p).sum();
    let needed = 1.5 * (2.0 * mean_n + 1.0).sqrt();
    let (extent, expanded) = if spec.auto_expand && needed > spec.extent {
        (needed, true)
    } else {
        (spec.extent, false)
    };
    let step = 2.0 * extent / (spec.points - 1) as f64;
    let axis: Vec<f64> = (0..spec.points).map(|i| -extent + step * i as f64).collect();
    let n_top = diag.iter().rposition(|&p| p > 1e-6).unwrap_or(0) as f64;
    let undersampled = step > PI / (2.0 * (2.0 * n_top + 1.0).sqrt());

    let values = par::map(&axis, |&p| axis.iter().map(|&x| wigner_at(rho, x, p)).collect::<Vec<f64>>());
    let n_r = spec.points / 2 + 1;
    let radii: Vec<f64> = (0..n_r).map(|i| extent * i as f64 / (n_r - 1) as f64).collect();
    let radial_profile = radii.iter().map(|&r| angular_average(rho, r)).collect();
    Ok(WignerGrid { x: axis.clone(), p: axis, values, radii, radial_profile, expanded, undersampled })
}

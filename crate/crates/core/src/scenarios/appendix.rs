// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::model::{mhz, SystemParams, Variant};

use super::sweep::{run_sweep, Axis, SweepOptions, SweepResult};
use super::threshold::{drive_curve, DriveCurve};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VariantSpec {
    pub g_r_mhz: f64,
    pub g_a_mhz: f64,
    pub drive_mhz: Vec<f64>,
    pub n_r: usize,
}

impl Default for VariantSpec {
    fn default() -> Self {
        Self { g_r_mhz: 8.0, g_a_mhz: 11.0, drive_mhz: (5..=25).map(|i| 2.0 * i as f64).collect(), n_r: 45 }
    }
}

impl VariantSpec {
    /// Every other drive and `n_r <= 25`.
    pub fn fast(self) -> Self {
        Self { drive_mhz: self.drive_mhz.iter().step_by(2).cloned().collect(), n_r: self.n_r.min(25), ..self }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VariantComparison {
    pub spec: VariantSpec,
    pub standard: DriveCurve,
    pub unity_lowering: DriveCurve,
    pub runtime_seconds: f64,
}

/// The same drive scan with the physical transmon lowering operator and
/// with unit matrix elements in the reservoir coupling.
pub fn variant_comparison(base: &SystemParams, spec: &VariantSpec, opts: &SweepOptions) -> VariantComparison {
    let start = Instant::now();
    let run = |variant: Variant, name: &str| {
        let b = SystemParams { variant, ..base.clone() };
        drive_curve(name, &b, (spec.g_r_mhz, spec.g_a_mhz), &spec.drive_mhz, spec.n_r, opts)
    };
    VariantComparison {
        spec: spec.clone(),
        standard: run(Variant::Standard, "standard"),
        unity_lowering: run(Variant::UnityLowering, "unity_lowering"),
        runtime_seconds: start.elapsed().as_secs_f64(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DirectPumpSpec {
    pub g_r_mhz: f64,
    pub drive_mhz: Vec<f64>,
    /// Drive detunings from `omega_ge`, MHz.
    pub detuning_mhz: Vec<f64>,
    pub n_r: usize,
}

impl Default for DirectPumpSpec {
    fn default() -> Self {
        Self {
            g_r_mhz: 8.0,
            drive_mhz: vec![80.0],
            detuning_mhz: vec![0.0, 2.5, 5.0, 7.5, 10.0, 15.0, 20.0, 30.0, 50.0, 100.0],
            n_r: 20,
        }
    }
}

impl DirectPumpSpec {
    pub fn fast(self) -> Self {
        Self { n_r: self.n_r.min(12), ..self }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectPumpCurve {
    pub drive_mhz: f64,
    pub detuning_mhz: Vec<f64>,
    pub mean_n: Vec<Option<f64>>,
    /// `N(detuning) / N(0)`, when zero detuning is on the grid.
    pub ratio: Vec<Option<f64>>,
    /// `N` never increases with `|detuning|`.
    pub monotone: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectPumpResult {
    pub spec: DirectPumpSpec,
    pub base: SystemParams,
    pub curves: Vec<DirectPumpCurve>,
    pub sweep: SweepResult,
}

/// Two-level transmon driven near `omega_ge` with the reservoir resonant:
/// photon number against drive detuning.
pub fn direct_pump_scan(base: &SystemParams, spec: &DirectPumpSpec, opts: &SweepOptions) -> DirectPumpResult {
    let base = SystemParams {
        g_r: mhz(spec.g_r_mhz),
        omega_r: base.omega_ge,
        kappa_a: 0.0,
        ..base.two_level_direct().with_n_r(spec.n_r)
    };
    let mut params = Vec::new();
    let mut coords = Vec::new();
    for &d in &spec.drive_mhz {
        for &det in &spec.detuning_mhz {
            params.push(SystemParams { drive: mhz(d), omega_d: base.omega_ge + mhz(det), ..base.clone() });
            coords.push(vec![d, det]);
        }
    }
    let axes = vec![
        Axis::new("drive", "MHz", spec.drive_mhz.clone()),
        Axis::new("detuning", "MHz", spec.detuning_mhz.clone()),
    ];
    let sweep = run_sweep("direct_pump", axes, &params, coords, opts);
    let cols = spec.detuning_mhz.len().max(1);
    let curves = spec
        .drive_mhz
        .iter()
        .zip(sweep.points.chunks(cols))
        .map(|(&d, row)| {
            let mean_n: Vec<Option<f64>> = row.iter().map(|p| p.mean_n).collect();
            let zero = spec.detuning_mhz.iter().position(|&x| x == 0.0).and_then(|i| mean_n[i]);
            let ratio = mean_n.iter().map(|n| Some(n.as_ref()? / zero.filter(|z| *z > 0.0)?)).collect();
            let mut by_abs: Vec<(f64, f64)> = spec
                .detuning_mhz
                .iter()
                .zip(&mean_n)
                .filter_map(|(x, n)| n.map(|n| (x.abs(), n)))
                .collect();
            by_abs.sort_by(|a, b| a.0.total_cmp(&b.0));
            let monotone = by_abs.windows(2).all(|w| w[0].0 == w[1].0 || w[1].1 <= w[0].1 * (1.0 + 1e-9) + 1e-12);
            DirectPumpCurve { drive_mhz: d, detuning_mhz: spec.detuning_mhz.clone(), mean_n, ratio, monotone }
        })
        .collect();
    DirectPumpResult { spec: spec.clone(), base, curves, sweep }
}

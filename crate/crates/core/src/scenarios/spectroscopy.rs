// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::analytics::{pump_detuning, sidebands, EfCoupling};
use crate::dynamics::EvolveOptions;
use crate::error::Result;
use crate::model::{mhz, to_mhz, SystemParams};
use crate::par;
use crate::simulation::evolve_from_ground;

use super::sweep::{run_sweep, Axis, SweepOptions, SweepResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectroscopySpec {
    /// Drive frequency offsets from `omega_gf / 2`, MHz.
    pub offsets_mhz: Vec<f64>,
    /// Transient snapshot times, us.
    pub sample_times: Vec<f64>,
    pub n_r: usize,
    /// Reservoir truncation for the transients.
    pub transient_n_r: usize,
    pub transient: EvolveOptions,
}

impl Default for SpectroscopySpec {
    fn default() -> Self {
        Self {
            offsets_mhz: (-20..=20).map(|i| 2.0 * i as f64).collect(),
            sample_times: vec![1.0, 2.0],
            n_r: 30,
            transient_n_r: 12,
            transient: EvolveOptions { rtol: 1e-6, atol: 1e-9, ..EvolveOptions::default() },
        }
    }
}

impl SpectroscopySpec {
    /// Every other offset and smaller truncations.
    pub fn fast(self) -> Self {
        Self {
            offsets_mhz: self.offsets_mhz.iter().step_by(2).cloned().collect(),
            n_r: self.n_r.min(15),
            transient_n_r: self.transient_n_r.min(8),
            ..self
        }
    }
}

/// Point A of the coupling plane: `g_r = g_a = 15 MHz`, `kappa_a = 128`,
/// 20 MHz drive.
pub fn point_a(n_r: usize) -> SystemParams {
    SystemParams { kappa_a: 128.0, ..SystemParams::coupling_point(15.0, 15.0, 20.0, n_r) }
}

#[derive(Clone, Debug, Serialize)]
pub struct TransientRow {
    pub offset_mhz: f64,
    pub mean_n: Vec<f64>,
    pub error: Option<String>,
}

/// Drive offsets at which the analytic model places spectral lines, MHz.
#[derive(Clone, Debug, Serialize)]
pub struct PredictedLines {
    pub coupling: EfCoupling,
    /// Blockade-breaking detuning for the empty reservoir.
    pub pump_detuning_mhz: f64,
    pub plus_mhz: f64,
    pub minus_mhz: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectroscopyResult {
    pub spec: SpectroscopySpec,
    pub params: SystemParams,
    pub steady: SweepResult,
    pub transients: Vec<TransientRow>,
    pub steady_peak_mhz: Option<f64>,
    /// Offset of the largest transient response per snapshot time.
    pub transient_peaks_mhz: Vec<Option<f64>>,
    pub predicted: Vec<PredictedLines>,
    pub runtime_seconds: f64,
}

fn argmax(xs: &[f64], ys: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    xs.iter()
        .zip(ys)
        .filter_map(|(x, y)| y.map(|y| (*x, y)))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(x, _)| x)
}

pub fn predicted_lines(p: &SystemParams) -> Result<Vec<PredictedLines>> {
    [EfCoupling::Duffing, EfCoupling::Bare]
        .into_iter()
        .map(|c| {
            let s = sidebands(p.alpha, p.g_r, p.g_a, c)?;
            Ok(PredictedLines {
                coupling: c,
                pump_detuning_mhz: to_mhz(pump_detuning(0, p.g_r, c.g_ef(p.g_a))?),
                plus_mhz: to_mhz(s.delta_plus - p.alpha / 2.0),
                minus_mhz: to_mhz(s.delta_minus - p.alpha / 2.0),
            })
        })
        .collect()
}

/// Reservoir population against drive frequency: steady state on the full
/// grid plus transient snapshots from the ground state.
pub fn spectroscopy(base: &SystemParams, spec: &SpectroscopySpec, sweep: &SweepOptions) -> Result<SpectroscopyResult> {
    let start = Instant::now();
    let centre = base.omega_gf() / 2.0;
    let at = |offset: f64, n_r: usize| SystemParams { omega_d: centre + mhz(offset), ..base.clone().with_n_r(n_r) };
    let params: Vec<SystemParams> = spec.offsets_mhz.iter().map(|&o| at(o, spec.n_r)).collect();
    let coords = spec.offsets_mhz.iter().map(|&o| vec![o]).collect();
    let axes = vec![Axis::new("drive_offset", "MHz", spec.offsets_mhz.clone())];
    let steady = run_sweep("spectroscopy", axes, &params, coords, sweep);

    let mut times = vec![0.0];
    times.extend(spec.sample_times.iter().cloned());
    let transients = if spec.sample_times.is_empty() {
        Vec::new()
    } else {
        par::map(&spec.offsets_mhz, |&o| match evolve_from_ground(&at(o, spec.transient_n_r), &times, spec.transient) {
            Ok(r) => TransientRow { offset_mhz: o, mean_n: r.mean_n[1..].to_vec(), error: None },
            Err(e) => TransientRow { offset_mhz: o, mean_n: Vec::new(), error: Some(e.to_string()) },
        })
    };
    let transient_peaks_mhz = (0..spec.sample_times.len())
        .map(|k| argmax(&spec.offsets_mhz, transients.iter().map(|r| r.mean_n.get(k).copied())))
        .collect();
    Ok(SpectroscopyResult {
        spec: spec.clone(),
        params: base.clone().with_n_r(spec.n_r),
        steady_peak_mhz: argmax(&spec.offsets_mhz, steady.points.iter().map(|p| p.mean_n)),
        steady,
        transients,
        transient_peaks_mhz,
        predicted: predicted_lines(base)?,
        runtime_seconds: start.elapsed().as_secs_f64(),
    })
}

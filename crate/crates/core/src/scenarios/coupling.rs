// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::model::{mhz, SystemParams};

use super::sweep::{run_sweep, Axis, SweepOptions, SweepResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CouplingSpec {
    pub drive_mhz: f64,
    pub g_r_mhz: Vec<f64>,
    pub g_a_mhz: Vec<f64>,
    pub n_r: usize,
}

impl Default for CouplingSpec {
    fn default() -> Self {
        let grid: Vec<f64> = (1..=8).map(|i| 2.0 * i as f64).collect();
        Self { drive_mhz: 20.0, g_r_mhz: grid.clone(), g_a_mhz: grid, n_r: 40 }
    }
}

impl CouplingSpec {
    /// Every other grid value and `n_r <= 20`.
    pub fn fast(self) -> Self {
        Self {
            g_r_mhz: self.g_r_mhz.iter().skip(1).step_by(2).cloned().collect(),
            g_a_mhz: self.g_a_mhz.iter().skip(1).step_by(2).cloned().collect(),
            n_r: self.n_r.min(20),
            ..self
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CouplingMap {
    pub spec: CouplingSpec,
    pub base: SystemParams,
    /// `[g_r index][g_a index]`.
    pub mean_n: Vec<Vec<Option<f64>>>,
    pub log10_fano: Vec<Vec<Option<f64>>>,
    pub sweep: SweepResult,
}

/// Steady-state photon number and Fano factor over the `(g_r, g_a)` plane.
pub fn coupling_sweep(base: &SystemParams, spec: &CouplingSpec, opts: &SweepOptions) -> CouplingMap {
    let mut params = Vec::new();
    let mut coords = Vec::new();
    for &gr in &spec.g_r_mhz {
        for &ga in &spec.g_a_mhz {
            params.push(SystemParams {
                g_r: mhz(gr),
                g_a: mhz(ga),
                drive: mhz(spec.drive_mhz),
                ..base.clone().with_n_r(spec.n_r)
            });
            coords.push(vec![gr, ga]);
        }
    }
    let axes = vec![Axis::new("g_r", "MHz", spec.g_r_mhz.clone()), Axis::new("g_a", "MHz", spec.g_a_mhz.clone())];
    let sweep = run_sweep("coupling_sweep", axes, &params, coords, opts);
    let cols = spec.g_a_mhz.len().max(1);
    let grid = |f: &dyn Fn(&super::SweepPoint) -> Option<f64>| -> Vec<Vec<Option<f64>>> {
        sweep.points.chunks(cols).map(|row| row.iter().map(f).collect()).collect()
    };
    let mean_n = grid(&|p| p.mean_n);
    let log10_fano = grid(&|p| p.fano.filter(|f| *f > 0.0).map(f64::log10));
    CouplingMap { spec: spec.clone(), base: base.clone(), mean_n, log10_fano, sweep }
}

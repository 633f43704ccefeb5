// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::dynamics::{SteadyMethod, SteadyOptions};
use crate::model::SystemParams;
use crate::par;
use crate::simulation::{solve_steady, SteadyStateResult};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepOptions {
    pub steady: SteadyOptions,
    /// Keep reservoir Fock distributions per point.
    pub keep_fock: bool,
    /// Re-solve extreme points with 10 more reservoir levels.
    pub check_truncation: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { steady: SteadyOptions::default(), keep_fock: false, check_truncation: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Axis {
    pub name: String,
    pub unit: String,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn new(name: &str, unit: &str, values: Vec<f64>) -> Self {
        Self { name: name.into(), unit: unit.into(), values }
    }
}

/// Steady-state observables at one sweep point. Failures keep their slot
/// and carry the error text.
#[derive(Clone, Debug, Serialize)]
pub struct SweepPoint {
    pub index: usize,
    pub coords: Vec<f64>,
    pub mean_n: Option<f64>,
    pub fano: Option<f64>,
    pub dbm: Option<f64>,
    pub residual: Option<f64>,
    pub relative_residual: Option<f64>,
    pub method: Option<SteadyMethod>,
    pub iterations: Option<usize>,
    pub p_e: Option<f64>,
    pub p_g: Option<f64>,
    pub fock: Option<Vec<f64>>,
    pub seconds: f64,
    pub error: Option<String>,
}

impl SweepPoint {
    fn from_result(index: usize, coords: Vec<f64>, r: Result<SteadyStateResult, crate::Error>, keep_fock: bool, seconds: f64) -> Self {
        match r {
            Ok(r) => Self {
                index,
                coords,
                mean_n: Some(r.photons.mean_n),
                fano: r.photons.fano,
                dbm: r.power.dbm.is_finite().then_some(r.power.dbm),
                residual: Some(r.residual),
                relative_residual: Some(r.relative_residual),
                method: Some(r.method),
                iterations: Some(r.iterations),
                p_e: Some(r.transmon.p_e),
                p_g: Some(r.transmon.p_g),
                fock: keep_fock.then(|| r.photons.fock_probs.clone()),
                seconds,
                error: None,
            },
            Err(e) => Self {
                index,
                coords,
                mean_n: None,
                fano: None,
                dbm: None,
                residual: None,
                relative_residual: None,
                method: None,
                iterations: None,
                p_e: None,
                p_g: None,
                fock: None,
                seconds,
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TruncationCheck {
    pub index: usize,
    pub n_r: usize,
    pub n_r_check: usize,
    pub mean_n: f64,
    pub mean_n_check: Option<f64>,
    pub relative_shift: Option<f64>,
    /// Shift above 2%.
    pub flagged: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub name: String,
    pub axes: Vec<Axis>,
    /// Row-major over `axes` (last axis fastest).
    pub points: Vec<SweepPoint>,
    pub truncation: Vec<TruncationCheck>,
    pub n_r: usize,
    pub parallel: bool,
    pub runtime_seconds: f64,
}

impl SweepResult {
    pub fn failures(&self) -> usize {
        self.points.iter().filter(|p| p.error.is_some()).count()
    }

    pub fn max_relative_residual(&self) -> f64 {
        self.points.iter().filter_map(|p| p.relative_residual).fold(0.0, f64::max)
    }

    pub fn truncation_flagged(&self) -> bool {
        self.truncation.iter().any(|t| t.flagged)
    }

    pub fn mean_n(&self) -> Vec<Option<f64>> {
        self.points.iter().map(|p| p.mean_n).collect()
    }

    pub fn fano(&self) -> Vec<Option<f64>> {
        self.points.iter().map(|p| p.fano).collect()
    }
}

pub const TRUNCATION_SHIFT_LIMIT: f64 = 0.02;

/// Solves every parameter set concurrently. `coords[i]` labels `params[i]`.
pub fn run_sweep(
    name: &str,
    axes: Vec<Axis>,
    params: &[SystemParams],
    coords: Vec<Vec<f64>>,
    opts: &SweepOptions,
) -> SweepResult {
    let start = Instant::now();
    let jobs: Vec<(usize, &SystemParams)> = params.iter().enumerate().collect();
    let points: Vec<SweepPoint> = par::map(&jobs, |&(i, p)| {
        let t = Instant::now();
        let r = solve_steady(p, &opts.steady);
        SweepPoint::from_result(i, coords[i].clone(), r, opts.keep_fock, t.elapsed().as_secs_f64())
    });
    let truncation = if opts.check_truncation { check_truncation(params, &points, &opts.steady) } else { Vec::new() };
    SweepResult {
        name: name.into(),
        axes,
        n_r: params.first().map(|p| p.dims.n_r).unwrap_or(0),
        points,
        truncation,
        parallel: par::PARALLEL,
        runtime_seconds: start.elapsed().as_secs_f64(),
    }
}

/// Sweep ends plus the most populated point, re-solved at `n_r + 10`.
fn check_truncation(params: &[SystemParams], points: &[SweepPoint], steady: &SteadyOptions) -> Vec<TruncationCheck> {
    let mut idx: Vec<usize> = Vec::new();
    if !points.is_empty() {
        idx.push(0);
        idx.push(points.len() - 1);
        if let Some(best) = points
            .iter()
            .filter_map(|p| p.mean_n.map(|n| (p.index, n)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
        {
            idx.push(best.0);
        }
    }
    idx.sort_unstable();
    idx.dedup();
    idx.retain(|&i| points[i].mean_n.is_some());
    par::map(&idx, |&i| truncation_check(i, &params[i], points[i].mean_n.unwrap_or(0.0), steady))
}

/// Re-solves `p` with 10 more reservoir levels and compares `<N>`.
pub fn truncation_check(index: usize, p: &SystemParams, mean_n: f64, steady: &SteadyOptions) -> TruncationCheck {
    let n_r_check = p.dims.n_r + 10;
    let check = solve_steady(&p.clone().with_n_r(n_r_check), steady).ok().map(|r| r.mean_n());
    let shift = check.map(|c| (c - mean_n).abs() / mean_n.abs().max(1e-12));
    let moved = check.is_none_or(|c| (c - mean_n).abs() > 1e-6);
    TruncationCheck {
        index,
        n_r: p.dims.n_r,
        n_r_check,
        mean_n,
        mean_n_check: check,
        relative_shift: shift,
        flagged: shift.is_none_or(|s| s > TRUNCATION_SHIFT_LIMIT) && moved,
    }
}

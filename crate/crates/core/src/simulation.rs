// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

//! One-call steady-state and transient solves for a [`SystemParams`].

use std::time::Instant;

use serde::Serialize;

use crate::dynamics::{
    build_liouvillian, evolve, steady_state, EvolutionResult, EvolveOptions, Liouvillian, SteadyMethod,
    SteadyOptions,
};
use crate::error::Result;
use crate::model::{build_hamiltonian, collapse_operators, SystemParams};
use crate::observables::{
    emitted_power, reservoir_statistics, transmon_populations, EmittedPower, PhotonStatistics,
    TransmonPopulations,
};
use crate::quantum::DensityMatrix;

pub fn liouvillian_for(p: &SystemParams) -> Result<Liouvillian> {
    build_liouvillian(&build_hamiltonian(p)?, &collapse_operators(p)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct SteadyStateResult {
    #[serde(skip)]
    pub rho_ss: DensityMatrix,
    /// Max-norm of `L rho_ss`, us^-1.
    pub residual: f64,
    pub relative_residual: f64,
    pub method: SteadyMethod,
    pub iterations: usize,
    pub photons: PhotonStatistics,
    pub transmon: TransmonPopulations,
    pub power: EmittedPower,
    pub seconds: f64,
}

impl SteadyStateResult {
    pub fn mean_n(&self) -> f64 {
        self.photons.mean_n
    }

    pub fn fano(&self) -> Option<f64> {
        self.photons.fano
    }
}

/// Steady state of the maser described by `p`, with derived observables.
pub fn solve_steady(p: &SystemParams, opts: &SteadyOptions) -> Result<SteadyStateResult> {
    let start = Instant::now();
    let l = liouvillian_for(p)?;
    let s = steady_state(&l, opts)?;
    let photons = reservoir_statistics(&s.rho)?;
    let transmon = transmon_populations(&s.rho)?;
    let power = emitted_power(photons.mean_n.max(0.0), p.kappa_r, p.omega_ge)?;
    Ok(SteadyStateResult {
        residual: s.residual,
        relative_residual: s.relative_residual(),
        method: s.method,
        iterations: s.iterations,
        photons,
        transmon,
        power,
        rho_ss: s.rho,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Transient from the ground state `|g, 0, 0>` sampled on `times`.
pub fn evolve_from_ground(p: &SystemParams, times: &[f64], opts: EvolveOptions) -> Result<EvolutionResult> {
    let l = liouvillian_for(p)?;
    evolve(&l, &DensityMatrix::ground(p.space()?), times, opts)
}

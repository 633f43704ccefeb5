// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::TAU;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::analytics::omega_2ph;
use crate::dynamics::{EvolutionResult, EvolveOptions};
use crate::error::Result;
use crate::model::{mhz, Dims, SystemParams};
use crate::par;
use crate::simulation::evolve_from_ground;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig2Spec {
    pub drive_mhz: f64,
    pub t_end: f64,
    pub samples: usize,
    pub n_r: usize,
    pub gamma: f64,
    pub g_a_mhz: f64,
    pub kappa_a: f64,
}

impl Default for Fig2Spec {
    fn default() -> Self {
        Self {
            drive_mhz: 25.0,
            t_end: 5.0,
            samples: 1001,
            n_r: 2,
            gamma: 1.0,
            g_a_mhz: 8.0,
            kappa_a: 138.0,
        }
    }
}

impl Fig2Spec {
    /// Coarser sampling.
    pub fn fast(self) -> Self {
        Self { samples: self.samples.min(401), ..self }
    }

    pub fn times(&self) -> Vec<f64> {
        let n = self.samples.max(2);
        (0..n).map(|i| self.t_end * i as f64 / (n - 1) as f64).collect()
    }

    /// Closed transmon, transmon with relaxation, and transmon with
    /// relaxation plus the lossy auxiliary cavity. The reservoir is
    /// decoupled in all three.
    pub fn panels(&self) -> Vec<(String, SystemParams)> {
        let mut closed = SystemParams::ideal(mhz(6000.0), mhz(-200.0), self.n_r);
        closed.drive = mhz(self.drive_mhz);
        closed.dims = Dims::new(4, 1, self.n_r);
        let lossy = SystemParams { gamma: self.gamma, ..closed.clone() };
        let aux = SystemParams {
            g_a: mhz(self.g_a_mhz),
            kappa_a: self.kappa_a,
            dims: Dims::new(4, 2, self.n_r),
            ..lossy.clone()
        };
        vec![("closed".into(), closed), ("relaxation".into(), lossy), ("auxiliary".into(), aux)]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Fig2Panel {
    pub label: String,
    pub params: SystemParams,
    pub evolution: EvolutionResult,
    pub max_p_f: f64,
    /// Dominant period of `p_f(t)`, us.
    pub period: Option<f64>,
    /// `p_e - p_g` averaged over the last fifth of the window.
    pub late_inversion: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Fig2Result {
    pub spec: Fig2Spec,
    pub panels: Vec<Fig2Panel>,
    /// `2 pi / Omega_2ph` from the closed-transmon parameters, us.
    pub predicted_period: f64,
    pub runtime_seconds: f64,
}

pub fn fig2(spec: &Fig2Spec, opts: EvolveOptions) -> Result<Fig2Result> {
    let start = Instant::now();
    let times = spec.times();
    let panels = spec.panels();
    let runs = par::map(&panels, |(label, p)| -> Result<Fig2Panel> {
        let evolution = evolve_from_ground(p, &times, opts)?;
        let max_p_f = evolution.p_f.iter().cloned().fold(0.0, f64::max);
        let period = dominant_period(&evolution.times, &evolution.p_f);
        let tail = evolution.times.len() * 4 / 5;
        let late: Vec<f64> = (tail..evolution.times.len()).map(|i| evolution.p_e[i] - evolution.p_g[i]).collect();
        let late_inversion = late.iter().sum::<f64>() / late.len().max(1) as f64;
        Ok(Fig2Panel { label: label.clone(), params: p.clone(), evolution, max_p_f, period, late_inversion })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let closed = &panels[0].1;
    let predicted_period = TAU / omega_2ph(closed.drive, closed.delta())?;
    Ok(Fig2Result { spec: spec.clone(), panels: runs, predicted_period, runtime_seconds: start.elapsed().as_secs_f64() })
}

/// Period of the strongest Fourier component of a uniformly sampled
/// signal, refined by a local scan. `None` for flat or too short signals.
pub fn dominant_period(times: &[f64], signal: &[f64]) -> Option<f64> {
    let n = times.len().min(signal.len());
    if n < 8 {
        return None;
    }
    let span = times[n - 1] - times[0];
    let dt = span / (n - 1) as f64;
    if !(span > 0.0) {
        return None;
    }
    let mean = signal[..n].iter().sum::<f64>() / n as f64;
    let centred: Vec<f64> = signal[..n].iter().map(|s| s - mean).collect();
    if centred.iter().all(|c| c.abs() < 1e-12) {
        return None;
    }
    let power = |f: f64| {
        let (mut re, mut im) = (0.0, 0.0);
        for (t, c) in times[..n].iter().zip(&centred) {
            let ph = TAU * f * t;
            re += c * ph.cos();
            im += c * ph.sin();
        }
        re * re + im * im
    };
    let f_min = 1.0 / span;
    let f_max = 0.5 / dt;
    let df = 0.25 / span;
    let mut best = (f_min, power(f_min));
    let mut f = f_min;
    while f <= f_max {
        let pw = power(f);
        if pw > best.1 {
            best = (f, pw);
        }
        f += df;
    }
    let (mut lo, mut hi) = ((best.0 - df).max(f_min * 0.5), best.0 + df);
    for _ in 0..60 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if power(m1) < power(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    Some(2.0 / (lo + hi))
}

// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use std::collections::HashMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::nelder_mead::{nelder_mead, NelderMeadOptions, SimplexSnapshot};
use crate::dynamics::SteadyOptions;
use crate::error::{Error, Result};
use crate::model::{mhz, to_mhz, SystemParams};
use crate::par;
use crate::simulation::solve_steady;

/// Tunable device parameters. Couplings and the drive offset are in MHz,
/// decay rates in us^-1. `OmegaD` is the offset of the drive from
/// `omega_gf / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FreeParam {
    GR,
    GA,
    KappaR,
    KappaA,
    OmegaD,
}

impl FreeParam {
    pub fn get(self, p: &SystemParams) -> f64 {
        match self {
            FreeParam::GR => to_mhz(p.g_r),
            FreeParam::GA => to_mhz(p.g_a),
            FreeParam::KappaR => p.kappa_r,
            FreeParam::KappaA => p.kappa_a,
            FreeParam::OmegaD => to_mhz(p.omega_d - p.omega_gf() / 2.0),
        }
    }

    pub fn set(self, p: &mut SystemParams, v: f64) {
        match self {
            FreeParam::GR => p.g_r = mhz(v),
            FreeParam::GA => p.g_a = mhz(v),
            FreeParam::KappaR => p.kappa_r = v,
            FreeParam::KappaA => p.kappa_a = v,
            FreeParam::OmegaD => p.omega_d = p.omega_gf() / 2.0 + mhz(v),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FreeVariable {
    pub param: FreeParam,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OptProblem {
    pub base: SystemParams,
    pub free: Vec<FreeVariable>,
    pub steady: SteadyOptions,
    pub nelder_mead: NelderMeadOptions,
}

impl OptProblem {
    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if self.free.is_empty() {
            return Err(Error::InvalidParams("no free parameters".into()));
        }
        let alpha_mhz = to_mhz(self.base.alpha).abs();
        for v in &self.free {
            if !(v.lower < v.upper) {
                return Err(Error::InvalidParams(format!("{:?}: lower bound must be below upper", v.param)));
            }
            match v.param {
                FreeParam::OmegaD => {
                    if v.lower < -alpha_mhz || v.upper > alpha_mhz {
                        return Err(Error::InvalidParams(format!(
                            "drive offset bounds must lie within +-{alpha_mhz} MHz"
                        )));
                    }
                }
                _ if v.lower <= 0.0 => {
                    return Err(Error::InvalidParams(format!("{:?}: bounds must be strictly positive", v.param)));
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn start(&self) -> Vec<f64> {
        self.free.iter().map(|v| v.param.get(&self.base)).collect()
    }

    pub fn params_at(&self, x: &[f64]) -> SystemParams {
        let mut p = self.base.clone();
        for (v, &xi) in self.free.iter().zip(x) {
            v.param.set(&mut p, xi);
        }
        p
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Evaluation {
    pub watts: f64,
    pub mean_n: f64,
    pub fano: Option<f64>,
    pub failed: bool,
}

/// Emitted-power objective with a cache keyed on parameters rounded to
/// seven significant digits.
pub struct PowerObjective<'a> {
    problem: &'a OptProblem,
    cache: Mutex<HashMap<Vec<u64>, Evaluation>>,
}

fn quantize(x: &[f64]) -> Vec<u64> {
    x.iter().map(|v| format!("{v:.6e}").parse::<f64>().unwrap_or(*v).to_bits()).collect()
}

impl<'a> PowerObjective<'a> {
    pub fn new(problem: &'a OptProblem) -> Self {
        Self { problem, cache: Mutex::new(HashMap::new()) }
    }

    pub fn evaluate(&self, x: &[f64]) -> Evaluation {
        let key = quantize(x);
        if let Some(e) = self.cache.lock().expect("cache lock").get(&key) {
            return *e;
        }
        let p = self.problem.params_at(x);
        let e = match solve_steady(&p, &self.problem.steady) {
            Ok(r) => Evaluation { watts: r.power.watts, mean_n: r.mean_n(), fano: r.fano(), failed: false },
            Err(_) => Evaluation { watts: f64::NAN, mean_n: f64::NAN, fano: None, failed: true },
        };
        self.cache.lock().expect("cache lock").insert(key, e);
        e
    }

    pub fn cache_len(&self) -> usize {
        self.cache.lock().expect("cache lock").len()
    }
}

/// Power is minimized as `-P` in attowatts to keep the simplex tolerances
/// meaningful.
const WATTS_TO_AW: f64 = 1e18;

#[derive(Clone, Debug, Serialize)]
pub struct OptResult {
    pub free: Vec<FreeVariable>,
    pub x: Vec<f64>,
    pub x_initial: Vec<f64>,
    pub params: SystemParams,
    pub watts: f64,
    pub dbm: Option<f64>,
    pub initial_watts: f64,
    pub mean_n: f64,
    pub fano: Option<f64>,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    /// `<N>` above 80% of the reservoir truncation.
    pub saturated: bool,
    pub suggested_n_r: Option<usize>,
    /// No power anywhere the optimizer looked (for example zero drive).
    pub degenerate: bool,
    pub history: Vec<SimplexSnapshot>,
}

fn dbm(watts: f64) -> Option<f64> {
    (watts > 0.0).then(|| 10.0 * (watts / 1e-3).log10())
}

/// Maximizes emitted power over the free parameters starting at `x0`
/// (the base parameters when `None`).
pub fn optimize_power_from(problem: &OptProblem, x0: Option<&[f64]>) -> Result<OptResult> {
    problem.validate()?;
    let objective = PowerObjective::new(problem);
    let start = x0.map(<[f64]>::to_vec).unwrap_or_else(|| problem.start());
    if start.len() != problem.free.len() {
        return Err(Error::InvalidParams("start point does not match the free parameters".into()));
    }
    let bounds: Vec<(f64, f64)> = problem.free.iter().map(|v| (v.lower, v.upper)).collect();
    let f = |x: &[f64]| {
        let e = objective.evaluate(x);
        if e.failed {
            f64::NAN
        } else {
            -e.watts * WATTS_TO_AW
        }
    };
    let nm = nelder_mead(&f, &start, Some(&bounds), problem.nelder_mead)?;
    let best = objective.evaluate(&nm.x);
    let x_initial: Vec<f64> = start.iter().zip(&bounds).map(|(x, (lo, hi))| x.clamp(*lo, *hi)).collect();
    let initial = objective.evaluate(&x_initial);
    let params = problem.params_at(&nm.x);
    let n_r = params.dims.n_r;
    let saturated = best.mean_n > 0.8 * n_r as f64;
    Ok(OptResult {
        free: problem.free.clone(),
        x_initial,
        x: nm.x,
        params,
        watts: best.watts,
        dbm: dbm(best.watts),
        initial_watts: initial.watts,
        mean_n: best.mean_n,
        fano: best.fano,
        iterations: nm.iterations,
        evaluations: objective.cache_len(),
        converged: nm.converged,
        saturated,
        suggested_n_r: saturated.then(|| ((best.mean_n / 0.6).ceil() as usize).max(n_r + 10)),
        degenerate: best.watts == 0.0 && nm.history.iter().all(|s| s.best_f == 0.0),
        history: nm.history,
    })
}

pub fn optimize_power(problem: &OptProblem) -> Result<OptResult> {
    optimize_power_from(problem, None)
}

/// Independent runs from several start points, executed concurrently.
pub fn multi_start(problem: &OptProblem, starts: &[Vec<f64>]) -> Vec<Result<OptResult>> {
    par::map(starts, |x0| optimize_power_from(problem, Some(x0)))
}

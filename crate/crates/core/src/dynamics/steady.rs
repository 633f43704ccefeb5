// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use faer::linalg::solvers::Solve;
use faer::sparse::{SparseColMat, Triplet};
use faer::Mat;
use serde::{Deserialize, Serialize};

use super::evolve::{EvolveOptions, Integrator};
use super::gmres::{gmres, GmresOptions};
use super::liouvillian::max_norm;
use super::sylvester::SylvesterPreconditioner;
use super::Liouvillian;
use crate::error::{Error, Result};
use crate::quantum::{DensityMatrix, C64};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SteadyMethod {
    /// Direct factorization for small systems, preconditioned GMRES otherwise.
    #[default]
    Auto,
    Direct,
    Iterative,
    Evolution,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SteadyOptions {
    pub method: SteadyMethod,
    /// Fall back to long-time evolution when the linear solve fails.
    pub fallback: bool,
    /// Largest superoperator dimension `D^2` handled by `Auto` with the
    /// direct solver.
    pub direct_limit: usize,
    pub gmres_restart: usize,
    pub gmres_tol: f64,
    pub gmres_max_iterations: usize,
    /// Accepted residual relative to the largest entry of `L`.
    pub residual_tol: f64,
    /// Longest total evolution time for the fallback, in us.
    pub evolution_max_time: f64,
}

impl Default for SteadyOptions {
    fn default() -> Self {
        Self {
            method: SteadyMethod::Auto,
            fallback: true,
            direct_limit: 10_000,
            gmres_restart: 80,
            gmres_tol: 1e-10,
            gmres_max_iterations: 6000,
            residual_tol: 1e-8,
            evolution_max_time: 1e5,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SteadyState {
    pub rho: DensityMatrix,
    /// Max-norm of `L rho`, us^-1.
    pub residual: f64,
    /// Largest entry of `L`; the acceptance bound is `residual_tol * scale`.
    pub scale: f64,
    pub method: SteadyMethod,
    pub iterations: usize,
}

impl SteadyState {
    pub fn relative_residual(&self) -> f64 {
        self.residual / self.scale
    }
}

/// Unique trace-one fixed point of `L`.
pub fn steady_state(l: &Liouvillian, opts: &SteadyOptions) -> Result<SteadyState> {
    if !l.has_dissipation() {
        return Err(Error::InvalidParams("steady state needs at least one non-zero collapse operator".into()));
    }
    let method = match opts.method {
        SteadyMethod::Auto if l.dim() <= opts.direct_limit => SteadyMethod::Direct,
        SteadyMethod::Auto => SteadyMethod::Iterative,
        m => m,
    };
    let attempt = match method {
        SteadyMethod::Direct => direct(l, opts),
        SteadyMethod::Iterative => iterative(l, opts),
        _ => evolution(l, opts, None),
    };
    match attempt {
        Ok(s) => Ok(s),
        Err(Error::AmbiguousSteadyState { .. } | Error::Solver(_)) if opts.fallback && method != SteadyMethod::Evolution => {
            evolution(l, opts, None)
        }
        Err(e) => Err(e),
    }
}

fn finish(l: &Liouvillian, x: &[C64], method: SteadyMethod, iterations: usize) -> Result<SteadyState> {
    if x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::AmbiguousSteadyState { residual: f64::INFINITY });
    }
    let rho = DensityMatrix::from_vec(l.space().clone(), x)?;
    let tr = rho.trace();
    if tr.norm() < 1e-300 {
        return Err(Error::AmbiguousSteadyState { residual: f64::INFINITY });
    }
    let scaled: Vec<C64> = x.iter().map(|z| z / tr).collect();
    let rho = DensityMatrix::from_vec(l.space().clone(), &scaled)?.symmetrized();
    let residual = l.residual(&rho);
    Ok(SteadyState { rho, residual, scale: l.max_abs().max(f64::MIN_POSITIVE), method, iterations })
}

fn check(s: SteadyState, opts: &SteadyOptions) -> Result<SteadyState> {
    if s.relative_residual() <= opts.residual_tol {
        Ok(s)
    } else {
        Err(Error::AmbiguousSteadyState { residual: s.residual })
    }
}

/// Sparse LU of `L` with the first row replaced by the trace functional,
/// followed by one refinement step.
fn direct(l: &Liouvillian, opts: &SteadyOptions) -> Result<SteadyState> {
    let n = l.dim();
    let d = l.hilbert_dim();
    let mut triplets = Vec::with_capacity(l.nnz() + d);
    for (v, (i, j)) in l.matrix().iter() {
        if i != 0 && v.norm() > 0.0 {
            triplets.push(Triplet::new(i, j, *v));
        }
    }
    for k in 0..d {
        triplets.push(Triplet::new(0, k * d + k, C64::new(1.0, 0.0)));
    }
    let a = SparseColMat::<usize, C64>::try_new_from_triplets(n, n, &triplets)
        .map_err(|e| Error::Solver(format!("assembling the augmented system: {e:?}")))?;
    let lu = a
        .sp_lu()
        .map_err(|_| Error::AmbiguousSteadyState { residual: f64::INFINITY })?;
    let mut rhs = Mat::<C64>::zeros(n, 1);
    rhs[(0, 0)] = C64::new(1.0, 0.0);
    let mut x = lu.solve(&rhs);

    let ax = &a * &x;
    let r = &rhs - &ax;
    let dx = lu.solve(&r);
    x = &x + &dx;

    let v: Vec<C64> = (0..n).map(|i| x[(i, 0)]).collect();
    check(finish(l, &v, SteadyMethod::Direct, 2)?, opts)
}

/// GMRES on `(L + u w^T) x = u`, with `u = vec(I/D)` and `w` the trace
/// functional, right-preconditioned by the no-jump Sylvester inverse.
fn iterative(l: &Liouvillian, opts: &SteadyOptions) -> Result<SteadyState> {
    let n = l.dim();
    let d = l.hilbert_dim();
    let pre = SylvesterPreconditioner::new(l)?;
    let inv_d = 1.0 / d as f64;
    let apply_a = |x: &[C64], y: &mut [C64]| {
        l.apply(x, y);
        let tr: C64 = (0..d).map(|i| x[i * d + i]).sum();
        for i in 0..d {
            y[i * d + i] += tr * inv_d;
        }
    };
    let apply_m = |x: &[C64], y: &mut [C64]| pre.apply(x, y);
    let mut rhs = vec![C64::default(); n];
    for i in 0..d {
        rhs[i * d + i] = C64::new(inv_d, 0.0);
    }
    let mut x = vec![C64::default(); n];
    pre.apply(&rhs, &mut x);
    let gm = GmresOptions { restart: opts.gmres_restart, tol: opts.gmres_tol, max_iterations: opts.gmres_max_iterations };
    let outcome = gmres(&apply_a, &apply_m, &rhs, &mut x, gm);
    let s = finish(l, &x, SteadyMethod::Iterative, outcome.iterations)?;
    if !outcome.converged && s.relative_residual() > opts.residual_tol {
        return Err(Error::Solver(format!(
            "GMRES stopped after {} iterations at relative residual {:e}",
            outcome.iterations, outcome.relative_residual
        )));
    }
    check(s, opts)
}

/// Long-time evolution until `||L rho||` meets the residual tolerance.
pub fn evolution(l: &Liouvillian, opts: &SteadyOptions, start: Option<&DensityMatrix>) -> Result<SteadyState> {
    let rho0 = match start {
        Some(r) => r.clone(),
        None => DensityMatrix::maximally_mixed(l.space().clone()),
    };
    let scale = l.max_abs().max(f64::MIN_POSITIVE);
    let target = opts.residual_tol * scale;
    let mut y = rho0.vectorize();
    let mut t = 0.0;
    let mut chunk = 1.0;
    let eopts = EvolveOptions { rtol: 1e-10, atol: 1e-13, ..Default::default() };
    let mut integ = Integrator::new(l, eopts);
    let mut ly = vec![C64::default(); y.len()];
    loop {
        let t_end = t + chunk;
        integ.advance(&mut y, &mut t, t_end)?;
        l.apply(&y, &mut ly);
        let residual = max_norm(&ly);
        if residual <= target {
            break;
        }
        if t >= opts.evolution_max_time {
            return Err(Error::Solver(format!(
                "evolution fallback did not settle within {t} us (residual {residual:e})"
            )));
        }
        chunk = (chunk * 2.0).min(opts.evolution_max_time - t).max(1e-3);
    }
    finish(l, &y, SteadyMethod::Evolution, integ.accepted)
}

// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::Liouvillian;
use crate::error::{Error, Result};
use crate::observables::{photon_statistics, transmon_populations};
use crate::quantum::{DensityMatrix, C64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EvolveOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    pub store_states: bool,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self { rtol: 1e-8, atol: 1e-10, max_steps: 5_000_000, store_states: false }
    }
}

/// Sampled observables of a trajectory. Populations refer to the first
/// subsystem, photon statistics to the last one.
#[derive(Clone, Debug, Serialize)]
pub struct EvolutionResult {
    pub times: Vec<f64>,
    pub p_g: Vec<f64>,
    pub p_e: Vec<f64>,
    pub p_f: Vec<f64>,
    pub p_rest: Vec<f64>,
    pub mean_n: Vec<f64>,
    pub fano: Vec<Option<f64>>,
    pub trace: Vec<f64>,
    #[serde(skip)]
    pub states: Option<Vec<DensityMatrix>>,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
}

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Off-diagonal part of `L` in CSR form.
struct OffDiagonal {
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<C64>,
}

impl OffDiagonal {
    fn apply(&self, x: &[C64], y: &mut [C64]) {
        for (row, yi) in y.iter_mut().enumerate() {
            let mut s = C64::default();
            for k in self.indptr[row]..self.indptr[row + 1] {
                s += self.values[k] * x[self.indices[k]];
            }
            *yi = s;
        }
    }
}

/// Adaptive Dormand-Prince integrator for `dy/dt = L y` with the diagonal of
/// `L` treated exactly through an integrating factor (Lawson form). Fast
/// phase rotations of far-detuned coherences then do not limit the step.
pub(crate) struct Integrator {
    opts: EvolveOptions,
    diag: Vec<C64>,
    off: OffDiagonal,
    k: Vec<Vec<C64>>,
    stage: Vec<C64>,
    work: Vec<C64>,
    grow: Vec<Vec<C64>>,
    h: f64,
    k0_valid: bool,
    pub accepted: usize,
    pub rejected: usize,
}

impl Integrator {
    pub fn new(l: &Liouvillian, opts: EvolveOptions) -> Self {
        let n = l.dim();
        let m = l.matrix();
        let mut diag = vec![C64::default(); n];
        let mut indptr = Vec::with_capacity(n + 1);
        let mut indices = Vec::with_capacity(m.nnz());
        let mut values = Vec::with_capacity(m.nnz());
        indptr.push(0);
        for (row, vec) in m.outer_iterator().enumerate() {
            for (col, v) in vec.iter() {
                if col == row {
                    diag[row] += *v;
                } else {
                    indices.push(col);
                    values.push(*v);
                }
            }
            indptr.push(indices.len());
        }
        Self {
            opts,
            diag,
            off: OffDiagonal { indptr, indices, values },
            k: vec![vec![C64::default(); n]; 7],
            stage: vec![C64::default(); n],
            work: vec![C64::default(); n],
            grow: vec![vec![C64::default(); n]; 7],
            h: 0.0,
            k0_valid: false,
            accepted: 0,
            rejected: 0,
        }
    }

    fn initial_step(&mut self, y: &[C64], span: f64) -> f64 {
        self.off.apply(y, &mut self.k[0]);
        self.k0_valid = true;
        let scale = |i: usize| self.opts.atol + self.opts.rtol * y[i].norm();
        let d0 = (0..y.len()).map(|i| y[i].norm() / scale(i)).fold(0.0, f64::max);
        let d1 = (0..y.len()).map(|i| self.k[0][i].norm() / scale(i)).fold(0.0, f64::max);
        let h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        h.min(span)
    }

    /// Advances `y` from `t` to `t_end`.
    pub fn advance(&mut self, y: &mut [C64], t: &mut f64, t_end: f64) -> Result<()> {
        if t_end <= *t {
            return Ok(());
        }
        if self.h == 0.0 {
            self.h = self.initial_step(y, t_end - *t);
        }
        if !self.k0_valid {
            self.off.apply(y, &mut self.k[0]);
            self.k0_valid = true;
        }
        let n = y.len();
        while *t < t_end {
            if self.accepted + self.rejected >= self.opts.max_steps {
                return Err(Error::Solver(format!(
                    "evolution exceeded {} steps at t = {t} us",
                    self.opts.max_steps
                )));
            }
            let remaining = t_end - *t;
            let last = self.h >= remaining;
            let h = if last { remaining } else { self.h };
            let h_min = 16.0 * f64::EPSILON * t.abs().max(1.0);
            if h < h_min && !last {
                return Err(Error::Stiffness { t: *t, step: h });
            }

            for s in 1..7 {
                if s < 6 || C[s] != C[s - 1] {
                    for (g, d) in self.grow[s].iter_mut().zip(&self.diag) {
                        *g = (d * (C[s] * h)).exp();
                    }
                } else {
                    let (head, tail) = self.grow.split_at_mut(s);
                    tail[0].copy_from_slice(&head[s - 1]);
                }
                for i in 0..n {
                    let mut acc = y[i];
                    for j in 0..s {
                        if A[s][j] != 0.0 {
                            acc += self.k[j][i] * (h * A[s][j]);
                        }
                    }
                    self.stage[i] = acc;
                }
                // k_s = e^{-c h D} R e^{c h D} V_s
                for i in 0..n {
                    self.work[i] = self.grow[s][i] * self.stage[i];
                }
                self.off.apply(&self.work, &mut self.k[s]);
                for i in 0..n {
                    self.k[s][i] /= self.grow[s][i];
                }
            }

            let mut err: f64 = 0.0;
            for i in 0..n {
                let mut e = C64::default();
                for (j, ej) in E.iter().enumerate() {
                    if *ej != 0.0 {
                        e += self.k[j][i] * *ej;
                    }
                }
                let sc = self.opts.atol + self.opts.rtol * y[i].norm().max(self.stage[i].norm());
                err = err.max((e * h).norm() / sc);
            }
            if !err.is_finite() {
                return Err(Error::Stiffness { t: *t, step: h });
            }

            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            if err <= 1.0 {
                *t = if last { t_end } else { *t + h };
                for i in 0..n {
                    y[i] = self.work[i];
                    self.k[0][i] = self.k[6][i] * self.grow[6][i];
                }
                self.accepted += 1;
                if !last || factor < 1.0 {
                    self.h = h * factor;
                }
            } else {
                self.rejected += 1;
                self.h = h * factor.min(1.0);
                if self.h < h_min {
                    return Err(Error::Stiffness { t: *t, step: self.h });
                }
            }
        }
        Ok(())
    }
}

/// Integrates `d rho / dt = L rho` and samples observables at `times`.
/// The initial state is taken to be the state at `times[0]`.
pub fn evolve(
    l: &Liouvillian,
    rho0: &DensityMatrix,
    times: &[f64],
    opts: EvolveOptions,
) -> Result<EvolutionResult> {
    if rho0.space() != l.space() {
        return Err(Error::Shape("initial state and Liouvillian act on different spaces".into()));
    }
    if times.is_empty() {
        return Err(Error::InvalidParams("empty time grid".into()));
    }
    if times.windows(2).any(|w| !(w[1] >= w[0])) || !times.iter().all(|t| t.is_finite()) {
        return Err(Error::InvalidParams("time grid must be finite and non-decreasing".into()));
    }
    let last_subsystem = l.space().num_subsystems() - 1;
    let mut y = rho0.vectorize();
    let mut t = times[0];
    let mut integrator = Integrator::new(l, opts);
    let mut out = EvolutionResult {
        times: times.to_vec(),
        p_g: Vec::with_capacity(times.len()),
        p_e: Vec::with_capacity(times.len()),
        p_f: Vec::with_capacity(times.len()),
        p_rest: Vec::with_capacity(times.len()),
        mean_n: Vec::with_capacity(times.len()),
        fano: Vec::with_capacity(times.len()),
        trace: Vec::with_capacity(times.len()),
        states: opts.store_states.then(Vec::new),
        accepted_steps: 0,
        rejected_steps: 0,
    };
    for &ts in times {
        integrator.advance(&mut y, &mut t, ts)?;
        let rho = DensityMatrix::from_vec(l.space().clone(), &y)?;
        let pops = transmon_populations(&rho)?;
        let stats = photon_statistics(&rho, last_subsystem)?;
        out.p_g.push(pops.p_g);
        out.p_e.push(pops.p_e);
        out.p_f.push(pops.p_f);
        out.p_rest.push(pops.p_rest);
        out.mean_n.push(stats.mean_n);
        out.fano.push(stats.fano);
        out.trace.push(rho.trace().re);
        if let Some(states) = out.states.as_mut() {
            states.push(rho);
        }
    }
    out.accepted_steps = integrator.accepted;
    out.rejected_steps = integrator.rejected;
    Ok(out)
}

/// Final state after evolving `rho0` for `duration`.
pub fn propagate(l: &Liouvillian, rho0: &DensityMatrix, duration: f64, opts: EvolveOptions) -> Result<DensityMatrix> {
    let mut y = rho0.vectorize();
    let mut t = 0.0;
    Integrator::new(l, opts).advance(&mut y, &mut t, duration)?;
    DensityMatrix::from_vec(l.space().clone(), &y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::build_liouvillian;
    use crate::quantum::{HilbertSpace, OperatorMatrix};
    use approx::assert_relative_eq;

    #[test]
    fn pure_decay() {
        let a = OperatorMatrix::annihilation(2).unwrap();
        let kappa: f64 = 1.3;
        let l = build_liouvillian(&OperatorMatrix::zeros(a.space().clone()), &[&a * kappa.sqrt()]).unwrap();
        let times: Vec<f64> = (0..=10).map(|i| i as f64 * 0.3).collect();
        let res = evolve(&l, &DensityMatrix::fock(2, 1).unwrap(), &times, EvolveOptions::default()).unwrap();
        for (t, n) in times.iter().zip(&res.mean_n) {
            assert_relative_eq!(*n, (-kappa * t).exp(), epsilon = 1e-8);
        }
    }

    #[test]
    fn unitary_evolution_keeps_purity() {
        let space = HilbertSpace::new(vec![3, 2]).unwrap();
        let b = OperatorMatrix::embed(&space, 0, &OperatorMatrix::annihilation(3).unwrap()).unwrap();
        let a = OperatorMatrix::embed(&space, 1, &OperatorMatrix::annihilation(2).unwrap()).unwrap();
        let h = &(&(&b * &a.adjoint()) + &(&b.adjoint() * &a)) + &(&(&b + &b.adjoint()) * 0.8);
        let l = build_liouvillian(&h, &[]).unwrap();
        let rho0 = DensityMatrix::ground(space);
        let res = evolve(&l, &rho0, &[0.0, 1.0, 2.5], EvolveOptions { store_states: true, ..Default::default() }).unwrap();
        for rho in res.states.unwrap() {
            assert_relative_eq!(rho.purity(), 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn rejects_bad_grid() {
        let a = OperatorMatrix::annihilation(2).unwrap();
        let l = build_liouvillian(&a.adjoint().try_mul(&a).unwrap(), &[]).unwrap();
        let rho = DensityMatrix::fock(2, 0).unwrap();
        assert!(evolve(&l, &rho, &[1.0, 0.5], EvolveOptions::default()).is_err());
        assert!(evolve(&l, &rho, &[], EvolveOptions::default()).is_err());
    }
}

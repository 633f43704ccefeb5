// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NelderMeadOptions {
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
    /// Stop when `max f - min f <= rel_tol * max|f| + abs_tol`.
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_iterations: usize,
    /// Initial step as a fraction of each bound range.
    pub initial_step: f64,
    /// Weight of the squared, range-normalized bound violation.
    pub penalty: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
            rel_tol: 1e-4,
            abs_tol: 1e-12,
            max_iterations: 500,
            initial_step: 0.1,
            penalty: 1e3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplexSnapshot {
    pub iteration: usize,
    pub best_x: Vec<f64>,
    pub best_f: f64,
    pub spread: f64,
    pub vertices: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub f_initial: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    pub history: Vec<SimplexSnapshot>,
}

struct Problem<'a> {
    f: &'a (dyn Fn(&[f64]) -> f64 + Sync),
    bounds: Option<&'a [(f64, f64)]>,
    penalty: f64,
}

impl Problem<'_> {
    /// Objective at the clamped point plus the violation penalty; non-finite
    /// values map to `+inf`.
    fn eval(&self, x: &[f64]) -> f64 {
        let Some(bounds) = self.bounds else {
            let v = (self.f)(x);
            return if v.is_finite() { v } else { f64::INFINITY };
        };
        let mut violation = 0.0;
        let clamped: Vec<f64> = x
            .iter()
            .zip(bounds)
            .map(|(&xi, &(lo, hi))| {
                let c = xi.clamp(lo, hi);
                let range = (hi - lo).abs().max(f64::MIN_POSITIVE);
                violation += ((xi - c) / range).powi(2);
                c
            })
            .collect();
        let v = (self.f)(&clamped);
        if !v.is_finite() {
            return f64::INFINITY;
        }
        v + self.penalty * violation * (1.0 + v.abs())
    }

    fn clamp(&self, x: &[f64]) -> Vec<f64> {
        match self.bounds {
            Some(b) => x.iter().zip(b).map(|(&xi, &(lo, hi))| xi.clamp(lo, hi)).collect(),
            None => x.to_vec(),
        }
    }
}

fn sort(simplex: &mut [(Vec<f64>, f64)]) {
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
}

/// Minimizes `f` starting from `x0`. With `bounds`, points outside the box
/// are clamped for evaluation and penalized by their distance.
pub fn nelder_mead(
    f: &(dyn Fn(&[f64]) -> f64 + Sync),
    x0: &[f64],
    bounds: Option<&[(f64, f64)]>,
    opts: NelderMeadOptions,
) -> Result<NelderMeadResult> {
    let n = x0.len();
    if n == 0 {
        return Err(Error::InvalidParams("Nelder-Mead needs at least one variable".into()));
    }
    if let Some(b) = bounds {
        if b.len() != n || b.iter().any(|(lo, hi)| !(lo < hi)) {
            return Err(Error::InvalidParams("bounds must match x0 and satisfy lower < upper".into()));
        }
    }
    let problem = Problem { f, bounds, penalty: opts.penalty };
    let x0 = problem.clamp(x0);

    let mut points = vec![x0.clone()];
    for i in 0..n {
        let mut x = x0.clone();
        let step = match bounds {
            Some(b) => opts.initial_step * (b[i].1 - b[i].0),
            None if x0[i] != 0.0 => 0.05 * x0[i],
            None => 2.5e-4,
        };
        // Step inward when the start sits on the upper bound.
        x[i] = match bounds {
            Some(b) if x[i] + step > b[i].1 => x[i] - step,
            _ => x[i] + step,
        };
        points.push(x);
    }
    let values = par::map(&points, |x| problem.eval(x));
    let mut evaluations = n + 1;
    let f_initial = values[0];
    if values.iter().all(|v| !v.is_finite()) {
        return Err(Error::Divergence("objective is not finite at any initial simplex vertex".into()));
    }
    let mut simplex: Vec<(Vec<f64>, f64)> = points.into_iter().zip(values).collect();
    sort(&mut simplex);

    let mut history = Vec::new();
    let mut iterations = 0;
    let mut converged = false;
    let snapshot = |it: usize, s: &[(Vec<f64>, f64)]| SimplexSnapshot {
        iteration: it,
        best_x: s[0].0.clone(),
        best_f: s[0].1,
        spread: s[n].1 - s[0].1,
        vertices: s.iter().map(|(x, _)| x.clone()).collect(),
    };
    history.push(snapshot(0, &simplex));

    loop {
        let best = simplex[0].1;
        let worst = simplex[n].1;
        let scale = simplex.iter().map(|(_, v)| v.abs()).filter(|v| v.is_finite()).fold(0.0, f64::max);
        if worst.is_finite() && worst - best <= opts.rel_tol * scale + opts.abs_tol {
            converged = true;
            break;
        }
        if iterations >= opts.max_iterations {
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> =
            (0..n).map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / n as f64).collect();
        let along = |t: f64| -> Vec<f64> {
            centroid.iter().zip(&simplex[n].0).map(|(c, w)| c + t * (c - w)).collect()
        };

        let xr = along(opts.reflection);
        let fr = problem.eval(&xr);
        evaluations += 1;
        if fr < simplex[0].1 {
            let xe = along(opts.reflection * opts.expansion);
            let fe = problem.eval(&xe);
            evaluations += 1;
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let (xc, fc) = if fr < simplex[n].1 {
                let xc = along(opts.reflection * opts.contraction);
                let fc = problem.eval(&xc);
                (xc, fc)
            } else {
                let xc = along(-opts.contraction);
                let fc = problem.eval(&xc);
                (xc, fc)
            };
            evaluations += 1;
            if fc < fr.min(simplex[n].1) {
                simplex[n] = (xc, fc);
            } else {
                let best_x = simplex[0].0.clone();
                let shrunk: Vec<Vec<f64>> = simplex[1..]
                    .iter()
                    .map(|(x, _)| best_x.iter().zip(x).map(|(b, xi)| b + opts.shrink * (xi - b)).collect())
                    .collect();
                let vals = par::map(&shrunk, |x| problem.eval(x));
                evaluations += n;
                for (k, (x, v)) in shrunk.into_iter().zip(vals).enumerate() {
                    simplex[k + 1] = (x, v);
                }
            }
        }
        sort(&mut simplex);
        history.push(snapshot(iterations, &simplex));
    }

    let (x, fx) = simplex[0].clone();
    Ok(NelderMeadResult {
        x: problem.clamp(&x),
        f: fx,
        f_initial,
        iterations,
        evaluations,
        converged,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn quadratic_bowl() {
        let f = |x: &[f64]| (x[0] - 3.0).powi(2);
        let r = nelder_mead(&f, &[0.0], None, NelderMeadOptions::default()).unwrap();
        assert!(r.converged);
        assert!((r.x[0] - 3.0).abs() < 1e-3, "{:?}", r.x);
    }

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| 100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2);
        let r = nelder_mead(&f, &[-1.2, 1.0], None, NelderMeadOptions::default()).unwrap();
        assert!((r.x[0] - 1.0).abs() < 1e-2 && (r.x[1] - 1.0).abs() < 1e-2, "{:?} after {}", r.x, r.iterations);
    }

    #[test]
    fn bounded_optimum_on_the_edge() {
        let f = |x: &[f64]| (x[0] - 5.0).powi(2) + (x[1] + 1.0).powi(2);
        let r = nelder_mead(&f, &[0.5, 0.5], Some(&[(0.0, 2.0), (0.0, 1.0)]), NelderMeadOptions::default()).unwrap();
        assert_relative_eq!(r.x[0], 2.0, epsilon = 1e-3);
        assert_relative_eq!(r.x[1], 0.0, epsilon = 1e-3);
    }

    #[test]
    fn best_so_far_is_monotone() {
        let f = |x: &[f64]| (x[0] - 1.0).powi(2) + 3.0 * (x[1] - 2.0).powi(2) + x[0] * x[1];
        let r = nelder_mead(&f, &[4.0, -3.0], None, NelderMeadOptions::default()).unwrap();
        assert!(r.history.windows(2).all(|w| w[1].best_f <= w[0].best_f));
        assert!(r.f <= r.f_initial);
    }

    #[test]
    fn divergent_objective() {
        let f = |_: &[f64]| f64::NAN;
        assert!(matches!(
            nelder_mead(&f, &[1.0, 2.0], None, NelderMeadOptions::default()),
            Err(Error::Divergence(_))
        ));
    }
}

// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use crate::quantum::C64;

#[derive(Clone, Copy, Debug)]
pub struct GmresOptions {
    pub restart: usize,
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for GmresOptions {
    fn default() -> Self {
        Self { restart: 80, tol: 1e-10, max_iterations: 4000 }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GmresOutcome {
    pub iterations: usize,
    /// Final `||b - A x|| / ||b||` (recomputed, not the recurrence value).
    pub relative_residual: f64,
    pub converged: bool,
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Restarted GMRES for `A x = b` with right preconditioner `M`
/// (solves `A M^-1 u = b`, `x = M^-1 u`). `x` holds the initial guess.
pub fn gmres(
    a: &dyn Fn(&[C64], &mut [C64]),
    m: &dyn Fn(&[C64], &mut [C64]),
    b: &[C64],
    x: &mut [C64],
    opts: GmresOptions,
) -> GmresOutcome {
    let n = b.len();
    let zero = C64::default();
    let b_norm = norm(b).max(f64::MIN_POSITIVE);
    let restart = opts.restart.max(1);
    let mut iterations = 0;
    let mut r = vec![zero; n];
    let mut t = vec![zero; n];
    let mut w = vec![zero; n];

    loop {
        a(x, &mut r);
        for (ri, bi) in r.iter_mut().zip(b) {
            *ri = bi - *ri;
        }
        let beta = norm(&r);
        let rel = beta / b_norm;
        if rel < opts.tol || iterations >= opts.max_iterations || !rel.is_finite() {
            return GmresOutcome { iterations, relative_residual: rel, converged: rel < opts.tol };
        }

        let mut basis: Vec<Vec<C64>> = vec![r.iter().map(|z| z / beta).collect()];
        let mut h = vec![vec![zero; restart]; restart + 1];
        let mut cs = vec![zero; restart];
        let mut sn = vec![zero; restart];
        let mut g = vec![zero; restart + 1];
        g[0] = C64::new(beta, 0.0);
        let mut used = 0;

        for k in 0..restart {
            m(&basis[k], &mut t);
            a(&t, &mut w);
            for j in 0..=k {
                let hj = dot(&basis[j], &w);
                h[j][k] = hj;
                for (wi, vi) in w.iter_mut().zip(&basis[j]) {
                    *wi -= hj * vi;
                }
            }
            let hn = norm(&w);
            h[k + 1][k] = C64::new(hn, 0.0);
            for j in 0..k {
                let tmp = cs[j].conj() * h[j][k] + sn[j].conj() * h[j + 1][k];
                h[j + 1][k] = -sn[j] * h[j][k] + cs[j] * h[j + 1][k];
                h[j][k] = tmp;
            }
            let den = (h[k][k].norm_sqr() + h[k + 1][k].norm_sqr()).sqrt();
            if den == 0.0 {
                break;
            }
            cs[k] = h[k][k] / den;
            sn[k] = h[k + 1][k] / den;
            h[k][k] = C64::new(den, 0.0);
            h[k + 1][k] = zero;
            g[k + 1] = -sn[k] * g[k];
            g[k] = cs[k].conj() * g[k];
            iterations += 1;
            used = k + 1;
            if g[k + 1].norm() / b_norm < opts.tol || iterations >= opts.max_iterations || hn == 0.0 {
                break;
            }
            basis.push(w.iter().map(|z| z / hn).collect());
        }

        if used == 0 {
            return GmresOutcome { iterations, relative_residual: rel, converged: false };
        }
        let mut y = vec![zero; used];
        for i in (0..used).rev() {
            let mut s = g[i];
            for j in i + 1..used {
                s -= h[i][j] * y[j];
            }
            y[i] = s / h[i][i];
        }
        let mut z = vec![zero; n];
        for (yj, vj) in y.iter().zip(&basis) {
            for (zi, vi) in z.iter_mut().zip(vj) {
                *zi += yj * vi;
            }
        }
        m(&z, &mut t);
        for (xi, ti) in x.iter_mut().zip(&t) {
            *xi += ti;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_nonsymmetric_system() {
        let n = 30;
        let mat = |i: usize, j: usize| -> C64 {
            if i == j {
                C64::new(4.0 + i as f64 * 0.1, 0.5)
            } else if j == i + 1 {
                C64::new(-1.0, 0.3)
            } else if i == j + 2 {
                C64::new(0.7, -0.2)
            } else {
                C64::default()
            }
        };
        let a = |x: &[C64], y: &mut [C64]| {
            for i in 0..n {
                y[i] = (0..n).map(|j| mat(i, j) * x[j]).sum();
            }
        };
        let ident = |x: &[C64], y: &mut [C64]| y.copy_from_slice(x);
        let b: Vec<C64> = (0..n).map(|i| C64::new(1.0, i as f64 * 0.01)).collect();
        let mut x = vec![C64::default(); n];
        let out = gmres(&a, &ident, &b, &mut x, GmresOptions { restart: 7, ..Default::default() });
        assert!(out.converged, "{out:?}");
        let mut ax = vec![C64::default(); n];
        a(&x, &mut ax);
        let err: f64 = ax.iter().zip(&b).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
        assert!(err < 1e-9);
    }
}

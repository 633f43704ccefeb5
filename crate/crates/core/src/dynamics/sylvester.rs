// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use faer::linalg::solvers::DenseSolveCore;
use faer::{Mat, MatRef};

use crate::error::{Error, Result};
use crate::quantum::C64;

use super::Liouvillian;

/// Inverse of the no-jump part `S(X) = K X + X K^dag`, with
/// `K = -iH - (1/2) sum c^dag c`, applied through an eigendecomposition of
/// `K`. Used as a right preconditioner for the steady-state solve.
pub struct SylvesterPreconditioner {
    d: usize,
    v: Mat<C64>,
    v_inv: Mat<C64>,
    lambda: Vec<C64>,
    shift: f64,
}

impl SylvesterPreconditioner {
    pub fn new(l: &Liouvillian) -> Result<Self> {
        let mut k = l.hamiltonian().to_dense();
        let d = k.nrows();
        for j in 0..d {
            for i in 0..d {
                k[(i, j)] *= C64::new(0.0, -1.0);
            }
        }
        for c in l.collapse_operators() {
            let cdc = (&c.adjoint() * c).to_dense();
            for j in 0..d {
                for i in 0..d {
                    k[(i, j)] -= cdc[(i, j)] * 0.5;
                }
            }
        }
        let evd = k
            .eigen()
            .map_err(|e| Error::Solver(format!("eigendecomposition of the no-jump generator failed: {e:?}")))?;
        let v = evd.U().to_owned();
        let s = evd.S().column_vector();
        let lambda: Vec<C64> = (0..d).map(|i| s[i]).collect();
        let v_inv = v.partial_piv_lu().inverse();
        if v_inv.norm_max().is_nan() {
            return Err(Error::Solver("no-jump generator is defective".into()));
        }

        // Pairs with lambda_i + conj(lambda_j) near zero make S singular; a
        // small real shift keeps the preconditioner bounded.
        let scale = lambda.iter().fold(0.0f64, |m, z| m.max(z.norm())).max(1.0);
        let max_decay = lambda.iter().fold(0.0f64, |m, z| m.max(-z.re));
        let min_denominator = lambda
            .iter()
            .map(|li| lambda.iter().map(|lj| (li + lj.conj()).norm()).fold(f64::INFINITY, f64::min))
            .fold(f64::INFINITY, f64::min);
        let shift = if min_denominator < 1e-10 * scale { 1e-3 * max_decay.max(1e-3) } else { 0.0 };
        Ok(Self { d, v, v_inv, lambda, shift })
    }

    /// `out = S^-1 y` for column-stacked `y`.
    pub fn apply(&self, y: &[C64], out: &mut [C64]) {
        let d = self.d;
        let ym = MatRef::from_column_major_slice(y, d, d);
        let mut w = &self.v_inv * ym * self.v_inv.adjoint();
        for j in 0..d {
            let lj = self.lambda[j].conj();
            for i in 0..d {
                w[(i, j)] /= self.lambda[i] + lj - self.shift;
            }
        }
        let x = &self.v * &w * self.v.adjoint();
        for j in 0..d {
            for i in 0..d {
                out[j * d + i] = x[(i, j)];
            }
        }
    }
}

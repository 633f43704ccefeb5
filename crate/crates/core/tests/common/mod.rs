// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use faer::Mat;
use maser::model::{mhz, Dims, SystemParams};
use maser::quantum::{DensityMatrix, OperatorMatrix, C64};
use proptest::prelude::*;

/// `exp(a)` by scaling and squaring a degree-24 Taylor polynomial.
pub fn expm(a: &Mat<C64>) -> Mat<C64> {
    let n = a.nrows();
    let norm = (0..n)
        .map(|i| (0..n).map(|j| a[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let s = if norm > 0.25 { (norm / 0.25).log2().ceil() as i32 } else { 0 };
    let scaled = a * faer::Scale(C64::new(0.5f64.powi(s), 0.0));
    let mut sum = Mat::<C64>::identity(n, n);
    let mut term = Mat::<C64>::identity(n, n);
    for k in 1..=24 {
        term = &term * &scaled * faer::Scale(C64::new(1.0 / k as f64, 0.0));
        sum = &sum + &term;
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

pub fn vec_to_mat(v: &[C64], d: usize) -> Mat<C64> {
    Mat::from_fn(d, d, |i, j| v[j * d + i])
}

pub fn mat_vec(m: &Mat<C64>, v: &[C64]) -> Vec<C64> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)] * v[j]).sum()).collect()
}

pub fn max_abs_diff(a: &Mat<C64>, b: &Mat<C64>) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            m = m.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    m
}

pub fn adjoint(m: &Mat<C64>) -> Mat<C64> {
    Mat::from_fn(m.ncols(), m.nrows(), |i, j| m[(j, i)].conj())
}

/// `-i[H, rho] + sum_k (c rho c^+ - {c^+ c, rho} / 2)` with dense products.
pub fn lindblad_rhs(h: &OperatorMatrix, cs: &[OperatorMatrix], rho: &Mat<C64>) -> Mat<C64> {
    let h = h.to_dense();
    let mi = C64::new(0.0, -1.0);
    let mut out = (&h * rho - rho * &h) * faer::Scale(mi);
    for c in cs {
        let c = c.to_dense();
        let cd = adjoint(&c);
        let cdc = &cd * &c;
        out = &out + &(&c * rho * &cd) - (&cdc * rho + rho * &cdc) * faer::Scale(C64::new(0.5, 0.0));
    }
    out
}

/// Random physical density matrix `A A^+ / tr`.
pub fn random_state(d: usize, entries: &[(f64, f64)]) -> Mat<C64> {
    let a = Mat::from_fn(d, d, |i, j| {
        let (re, im) = entries[(i * d + j) % entries.len()];
        C64::new(re + 0.1 * (i as f64 - j as f64), im)
    });
    let m = &a * adjoint(&a);
    let tr: C64 = (0..d).map(|i| m[(i, i)]).sum();
    &m * faer::Scale(C64::new(1.0 / tr.re, 0.0))
}

pub fn density(p: &SystemParams, m: Mat<C64>) -> DensityMatrix {
    DensityMatrix::from_mat(p.space().unwrap(), m).unwrap()
}

/// Small maser instances with `D <= 24` and every rate switched on.
pub fn small_params() -> impl Strategy<Value = SystemParams> {
    (
        (2usize..=3, 1usize..=2, 2usize..=4),
        (-300.0..-100.0f64, -40.0..40.0f64, -40.0..40.0f64, -40.0..40.0f64),
        (0.0..30.0f64, 0.0..15.0f64, 0.0..15.0f64),
        (0.05..2.0f64, 1.0..150.0f64, 0.05..2.0f64, 0.0..1.0f64),
    )
        .prop_map(|((n_t, n_a, n_r), (alpha, dd, dr, da), (drive, g_r, g_a), (kr, ka, gamma, gphi))| {
            let mut p = SystemParams::ideal(mhz(6000.0), mhz(alpha), n_r);
            p.dims = Dims::new(n_t, n_a, n_r);
            p.omega_d += mhz(dd);
            p.omega_r += mhz(dr);
            p.omega_a += mhz(da);
            p.drive = mhz(drive);
            p.g_r = mhz(g_r);
            p.g_a = if n_a > 1 { mhz(g_a) } else { 0.0 };
            p.kappa_r = kr;
            p.kappa_a = ka;
            p.gamma = gamma;
            p.gamma_phi = gphi;
            p
        })
}

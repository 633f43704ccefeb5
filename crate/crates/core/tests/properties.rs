// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

mod common;

use common::*;
use maser::analytics::{decay_curve_rho_ff, kappa_a_eff, pump_detuning};
use maser::dynamics::{evolve, steady_state, EvolveOptions, SteadyOptions};
use maser::model::{build_hamiltonian, collapse_operators, mhz};
use maser::observables::{photon_statistics, wigner, WignerSpec};
use maser::quantum::{expect, ptrace, DensityMatrix, HilbertSpace, OperatorMatrix, C64};
use maser::simulation::liouvillian_for;
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn liouvillian_matches_dense_lindblad(p in small_params(), entries in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 8)) {
        let h = build_hamiltonian(&p).unwrap();
        let cs = collapse_operators(&p).unwrap();
        let l = liouvillian_for(&p).unwrap();
        let d = l.hilbert_dim();
        let rho = random_state(d, &entries);
        let expected = lindblad_rhs(&h, &cs, &rho);
        let v = density(&p, rho).vectorize();
        let mut out = vec![C64::new(0.0, 0.0); v.len()];
        l.apply(&v, &mut out);
        let scale = l.max_abs();
        prop_assert!(max_abs_diff(&vec_to_mat(&out, d), &expected) <= 1e-12 * scale);
        prop_assert!(l.trace_left_null_error() <= 1e-12 * scale);
    }

    #[test]
    fn hamiltonian_is_hermitian(p in small_params()) {
        let h = build_hamiltonian(&p).unwrap();
        prop_assert!(h.hermiticity_error() <= 1e-12 * h.max_abs().max(1.0));
    }

    #[test]
    fn evolution_preserves_state_properties(p in small_params(), entries in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 6)) {
        let l = liouvillian_for(&p).unwrap();
        let rho0 = density(&p, random_state(l.hilbert_dim(), &entries));
        let opts = EvolveOptions { store_states: true, ..EvolveOptions::default() };
        let r = evolve(&l, &rho0, &[0.0, 0.05, 0.2], opts).unwrap();
        for rho in r.states.unwrap() {
            prop_assert!((rho.trace().re - 1.0).abs() < 1e-8);
            prop_assert!(rho.trace().im.abs() < 1e-10);
            prop_assert!(rho.hermiticity_error() < 1e-9);
            prop_assert!(rho.min_eigenvalue().unwrap() > -1e-7);
        }
    }

    #[test]
    fn evolution_matches_matrix_exponential(p in small_params(), entries in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 6), t in 0.01..0.3f64) {
        let l = liouvillian_for(&p).unwrap();
        let d = l.hilbert_dim();
        let rho0 = density(&p, random_state(d, &entries));
        let opts = EvolveOptions { store_states: true, ..EvolveOptions::default() };
        let r = evolve(&l, &rho0, &[0.0, t], opts).unwrap();
        let lt = l.to_dense() * faer::Scale(C64::new(t, 0.0));
        let exact = vec_to_mat(&mat_vec(&expm(&lt), &rho0.vectorize()), d);
        let got = r.states.unwrap().pop().unwrap();
        prop_assert!(max_abs_diff(got.matrix(), &exact) < 1e-7, "diff {}", max_abs_diff(got.matrix(), &exact));
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn steady_state_is_stationary_under_exact_propagation(p in small_params()) {
        let l = liouvillian_for(&p).unwrap();
        let s = steady_state(&l, &SteadyOptions::default()).unwrap();
        prop_assert!(s.rho.validate().is_ok());
        prop_assert!(s.relative_residual() <= 1e-8);
        let d = l.hilbert_dim();
        let prop = expm(&(l.to_dense() * faer::Scale(C64::new(0.5, 0.0))));
        let moved = vec_to_mat(&mat_vec(&prop, &s.rho.vectorize()), d);
        prop_assert!(max_abs_diff(&moved, s.rho.matrix()) < 1e-7);
    }
}

fn random_operator(dim: usize, entries: &[(f64, f64)]) -> OperatorMatrix {
    let space = HilbertSpace::single(dim).unwrap();
    let trip = (0..dim * dim).map(|k| {
        let (re, im) = entries[k % entries.len()];
        (k / dim, k % dim, C64::new(re * (1.0 + k as f64 * 0.37).sin(), im))
    });
    OperatorMatrix::from_triplets(space, trip).unwrap()
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn tensor_product_is_associative(
        (da, db, dc) in (1usize..=3, 1usize..=3, 1usize..=3),
        e in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 5),
    ) {
        let a = random_operator(da, &e);
        let b = random_operator(db, &e[1..]);
        let c = random_operator(dc, &e[2..]);
        let left = a.kron(&b).kron(&c).to_dense();
        let right = a.kron(&b.kron(&c)).to_dense();
        prop_assert!(max_abs_diff(&left, &right) <= 1e-15);
    }

    #[test]
    fn commutator_identities(dim in 2usize..=6, e in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 7)) {
        let a = random_operator(dim, &e);
        let b = random_operator(dim, &e[2..]);
        let c = random_operator(dim, &e[4..]);
        let ab = a.commutator(&b).unwrap().to_dense();
        let ba = b.commutator(&a).unwrap().to_dense();
        prop_assert!(max_abs_diff(&ab, &(ba * faer::Scale(C64::new(-1.0, 0.0)))) < 1e-14);
        let jacobi = &a.commutator(&b.commutator(&c).unwrap()).unwrap()
            + &b.commutator(&c.commutator(&a).unwrap()).unwrap();
        let jacobi = &jacobi + &c.commutator(&a.commutator(&b).unwrap()).unwrap();
        prop_assert!(jacobi.max_abs() < 1e-12);
    }

    #[test]
    fn ladder_commutator_is_identity_below_cutoff(dim in 2usize..=30) {
        let a = OperatorMatrix::annihilation(dim).unwrap();
        let c = a.commutator(&a.adjoint()).unwrap();
        for n in 0..dim {
            let want = if n + 1 < dim { 1.0 } else { -((dim - 1) as f64) };
            prop_assert!((c.get(n, n).re - want).abs() < 1e-12);
        }
    }

    #[test]
    fn partial_trace_recovers_factors(
        (da, db) in (1usize..=4, 1usize..=4),
        e in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 6),
    ) {
        let ra = DensityMatrix::from_mat(HilbertSpace::single(da).unwrap(), random_state(da, &e)).unwrap();
        let rb = DensityMatrix::from_mat(HilbertSpace::single(db).unwrap(), random_state(db, &e[3..])).unwrap();
        let joint = DensityMatrix::product(&[ra.clone(), rb.clone()]).unwrap();
        prop_assert!(ptrace(&joint, 0).unwrap().max_abs_diff(&ra) < 1e-14);
        prop_assert!(ptrace(&joint, 1).unwrap().max_abs_diff(&rb) < 1e-14);
        prop_assert!((ptrace(&joint, 1).unwrap().trace().re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn hermitian_expectations_are_real(dim in 2usize..=6, e in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 7)) {
        let a = random_operator(dim, &e);
        let h = &a + &a.adjoint();
        let rho = DensityMatrix::from_mat(HilbertSpace::single(dim).unwrap(), random_state(dim, &e[1..])).unwrap();
        prop_assert!(expect(&h, &rho).unwrap().im.abs() < 1e-13);
    }

    #[test]
    fn coherent_mixtures_are_not_sub_poissonian(
        amps in prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64, 0.05..1.0f64), 1..4),
    ) {
        let dim = 40;
        let total: f64 = amps.iter().map(|a| a.2).sum();
        let mut probs = vec![0.0; dim];
        for &(re, im, w) in &amps {
            let c = DensityMatrix::coherent(dim, C64::new(re, im)).unwrap();
            for (p, q) in probs.iter_mut().zip(c.diagonal()) {
                *p += w / total * q;
            }
        }
        let rho = DensityMatrix::diagonal_state(HilbertSpace::single(dim).unwrap(), &probs).unwrap();
        if let Some(f) = photon_statistics(&rho, 0).unwrap().fano {
            prop_assert!(f >= 1.0 - 1e-3, "fano {f}");
        }
    }

    #[test]
    fn pump_detuning_decreases_with_photon_number(g_r in 0.1..100.0f64, g_ef in 0.0..150.0f64, n in 0i64..200) {
        let a = pump_detuning(n, g_r, g_ef).unwrap();
        let b = pump_detuning(n + 1, g_r, g_ef).unwrap();
        prop_assert!(a > 0.0 && b < a);
    }

    #[test]
    fn kappa_eff_is_continuous(g_a in 0.1..200.0f64, eps in 1e-12..1e-3f64) {
        let at = 4.0 * g_a;
        let (k0, _) = kappa_a_eff(g_a, at);
        prop_assert_eq!(k0, at / 2.0);
        let (below, _) = kappa_a_eff(g_a, at * (1.0 - eps));
        let (above, _) = kappa_a_eff(g_a, at * (1.0 + eps));
        let tol = at * (8.0 * eps).sqrt();
        prop_assert!((below - k0).abs() <= tol && (above - k0).abs() <= tol);
    }

    #[test]
    fn decay_curve_is_a_probability(t in 0.0..50.0f64, g in 0.0..200.0f64, kappa in 0.0..500.0f64) {
        let v = decay_curve_rho_ff(t, g, kappa).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&v), "{v}");
    }
}

/// Hermite function `psi_n(x)` for `x = (a + a^+)/sqrt 2`.
fn hermite_functions(x: f64, n: usize) -> Vec<f64> {
    let mut psi = vec![0.0; n];
    psi[0] = std::f64::consts::PI.powf(-0.25) * (-x * x / 2.0).exp();
    if n > 1 {
        psi[1] = 2f64.sqrt() * x * psi[0];
    }
    for k in 2..n {
        psi[k] = (2.0 / k as f64).sqrt() * x * psi[k - 1] - ((k - 1) as f64 / k as f64).sqrt() * psi[k - 2];
    }
    psi
}

proptest! {
    #![proptest_config(config(8))]

    #[test]
    fn wigner_marginal_is_position_density(re in -1.5..1.5f64, im in -1.5..1.5f64, nbar in 0.0..1.0f64) {
        let dim = 24;
        let coh = DensityMatrix::coherent(dim, C64::new(re, im)).unwrap();
        let th = DensityMatrix::thermal(dim, nbar).unwrap();
        let m = coh.matrix() * faer::Scale(C64::new(0.5, 0.0)) + th.matrix() * faer::Scale(C64::new(0.5, 0.0));
        let rho = DensityMatrix::from_mat(HilbertSpace::single(dim).unwrap(), m).unwrap();
        let grid = wigner(&rho, WignerSpec { extent: 7.0, points: 141, auto_expand: false }).unwrap();
        let marginal = grid.x_marginal();
        for (i, &x) in grid.x.iter().enumerate().step_by(7) {
            let psi = hermite_functions(x, dim);
            let mut density = 0.0;
            for a in 0..dim {
                for b in 0..dim {
                    density += (rho.get(a, b) * psi[a] * psi[b]).re;
                }
            }
            prop_assert!((marginal[i] - density).abs() < 1e-3, "x={x}: {} vs {}", marginal[i], density);
        }
    }
}

#[test]
fn drive_only_liouvillian_is_unitary() {
    let mut p = maser::model::SystemParams::ideal(mhz(6000.0), mhz(-200.0), 2);
    p.drive = mhz(10.0);
    let l = liouvillian_for(&p).unwrap();
    assert!(!l.has_dissipation());
}

// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

mod common;

use std::f64::consts::PI;

use approx::assert_relative_eq;
use common::*;
use faer::Side;
use maser::analytics::{decay_curve_rho_ff, delta_ge, delta_gef, EfCoupling};
use maser::dynamics::{build_liouvillian, evolve, EvolveOptions, SteadyMethod, SteadyOptions};
use maser::model::{build_hamiltonian, mhz, Dims, SystemParams};
use maser::observables::{photon_statistics, wigner, wigner_at, WignerSpec};
use maser::quantum::{DensityMatrix, HilbertSpace, OperatorMatrix, C64};
use maser::simulation::{evolve_from_ground, liouvillian_for, solve_steady};

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Resonantly coupled transmon and reservoir with nothing else switched on.
fn bare(n_t: usize, n_a: usize, n_r: usize) -> SystemParams {
    let mut p = SystemParams::ideal(mhz(6000.0), mhz(-200.0), n_r);
    p.dims = Dims::new(n_t, n_a, n_r);
    p
}

#[test]
fn driven_damped_two_level_matches_bloch_solution() {
    for (drive, offset, gamma) in [(3.0, 0.0, 2.0), (5.0, 1.5, 1.0), (0.7, -0.4, 4.0)] {
        let mut p = bare(2, 1, 2);
        p.drive = drive;
        p.omega_d = p.omega_ge - offset;
        p.gamma = gamma;
        p.kappa_r = 1.0;
        let delta = p.delta();
        let want = (drive * drive / 4.0) / (delta * delta + gamma * gamma / 4.0 + drive * drive / 2.0);
        for method in [SteadyMethod::Direct, SteadyMethod::Iterative, SteadyMethod::Evolution] {
            let r = solve_steady(&p, &SteadyOptions { method, ..SteadyOptions::default() }).unwrap();
            assert!((r.transmon.p_e - want).abs() < 1e-8, "{method:?}: {} vs {want}", r.transmon.p_e);
        }
    }
}

fn block_eigenvalues(h: &faer::Mat<C64>, idx: &[usize]) -> Vec<f64> {
    let m = faer::Mat::from_fn(idx.len(), idx.len(), |i, j| h[(idx[i], idx[j])]);
    let mut e = m.self_adjoint_eigenvalues(Side::Lower).unwrap();
    e.sort_by(f64::total_cmp);
    e
}

#[test]
fn doublet_splitting_matches_block_diagonalization() {
    let n_r = 22;
    let mut p = bare(3, 1, n_r);
    p.g_r = mhz(6.5);
    let space = p.space().unwrap();
    let h = build_hamiltonian(&p).unwrap().to_dense();
    for n in 0..=20usize {
        let idx = [space.index_of(&[1, 0, n]).unwrap(), space.index_of(&[0, 0, n + 1]).unwrap()];
        let e = block_eigenvalues(&h, &idx);
        let want = delta_ge(n as i64, p.g_r).unwrap();
        assert_relative_eq!(e[1] - e[0], want, max_relative = 1e-9);
    }
}

#[test]
fn triplet_matches_block_diagonalization() {
    let n_r = 22;
    let mut p = bare(3, 2, n_r);
    p.g_r = mhz(6.5);
    p.g_a = mhz(23.5);
    let space = p.space().unwrap();
    let h = build_hamiltonian(&p).unwrap().to_dense();
    let g_ef = EfCoupling::Duffing.g_ef(p.g_a);
    for n in 0..=20usize {
        let idx = [
            space.index_of(&[2, 0, n]).unwrap(),
            space.index_of(&[1, 1, n]).unwrap(),
            space.index_of(&[0, 1, n + 1]).unwrap(),
        ];
        let e = block_eigenvalues(&h, &idx);
        let t = delta_gef(n as i64, p.g_r, g_ef).unwrap();
        let centre = h[(idx[0], idx[0])].re;
        assert_relative_eq!(e[2] - e[0], t.splitting, max_relative = 1e-9);
        assert!((e[1] - centre).abs() <= 1e-9 * t.splitting);
        assert_relative_eq!(e[2] - centre, t.energies[0], max_relative = 1e-9);

        // Eigenvectors: (H - E) v = 0 in the block for each analytic vector.
        let m = faer::Mat::from_fn(3, 3, |i, j| h[(idx[i], idx[j])] - if i == j { c(centre) } else { c(0.0) });
        for (k, amp) in t.amplitudes.iter().enumerate() {
            for i in 0..3 {
                let hv: C64 = (0..3).map(|j| m[(i, j)] * amp[j]).sum();
                assert!((hv - c(t.energies[k] * amp[i])).norm() <= 1e-9 * t.splitting, "N={n} k={k}");
            }
        }
    }
}

/// `|f,0>` and `|e,1>` coupled with strength `g`, cavity loss `kappa`, as
/// a two-level emitter times a two-level cavity.
fn decay_oracle(g: f64, kappa: f64, times: &[f64]) -> Vec<f64> {
    let space = HilbertSpace::new(vec![2, 2]).unwrap();
    let lower = OperatorMatrix::annihilation(2).unwrap();
    let sm = OperatorMatrix::embed(&space, 0, &lower).unwrap();
    let a = OperatorMatrix::embed(&space, 1, &lower).unwrap();
    let h = (&(&sm.adjoint() * &a) + &(&sm * &a.adjoint())).scale(c(g));
    let l = build_liouvillian(&h, &[a.scale(c(kappa.sqrt()))]).unwrap();
    let rho0 = DensityMatrix::from_ket(space.clone(), &{
        let mut k = vec![c(0.0); 4];
        k[space.index_of(&[1, 0]).unwrap()] = c(1.0);
        k
    })
    .unwrap();
    let dense = l.to_dense();
    let f0 = space.index_of(&[1, 0]).unwrap();
    times
        .iter()
        .map(|&t| {
            let prop = expm(&(&dense * faer::Scale(c(t))));
            vec_to_mat(&mat_vec(&prop, &rho0.vectorize()), 4)[(f0, f0)].re
        })
        .collect()
}

#[test]
fn decay_curve_matches_master_equation() {
    let times: Vec<f64> = (0..40).map(|i| 0.0025 * i as f64 * i as f64).collect();
    for (g, kappa) in [(mhz(23.5), 138.0), (mhz(2.0), 138.0), (34.5, 138.0), (10.0, 5.0), (1.0, 300.0)] {
        let oracle = decay_oracle(g, kappa, &times);
        for (t, want) in times.iter().zip(oracle) {
            let got = decay_curve_rho_ff(*t, g, kappa).unwrap();
            assert!((got - want).abs() < 1e-6, "g={g} kappa={kappa} t={t}: {got} vs {want}");
        }
    }
}

#[test]
fn vacuum_rabi_oscillation_at_twice_the_coupling() {
    let mut p = bare(2, 1, 3);
    p.g_r = mhz(5.0);
    let space = p.space().unwrap();
    let mut ket = vec![c(0.0); space.total()];
    ket[space.index_of(&[1, 0, 0]).unwrap()] = c(1.0);
    let rho0 = DensityMatrix::from_ket(space, &ket).unwrap();
    let times: Vec<f64> = (0..=50).map(|i| 0.004 * i as f64).collect();
    let r = evolve(&liouvillian_for(&p).unwrap(), &rho0, &times, EvolveOptions::default()).unwrap();
    for (t, pe) in times.iter().zip(&r.p_e) {
        assert!((pe - (p.g_r * t).cos().powi(2)).abs() < 1e-7);
    }
    // Full transfer after half a period of the 2 g_r splitting.
    let half = PI / (2.0 * p.g_r);
    let r = evolve(&liouvillian_for(&p).unwrap(), &DensityMatrix::from_ket(p.space().unwrap(), &{
        let mut k = vec![c(0.0); p.dims.total()];
        k[p.space().unwrap().index_of(&[1, 0, 0]).unwrap()] = c(1.0);
        k
    }).unwrap(), &[0.0, half], EvolveOptions::default()).unwrap();
    assert!((r.mean_n[1] - 1.0).abs() < 1e-7);
}

#[test]
fn second_excited_level_decays_at_twice_gamma() {
    let mut p = bare(3, 1, 2);
    p.gamma = 0.8;
    let space = p.space().unwrap();
    let mut ket = vec![c(0.0); space.total()];
    ket[space.index_of(&[2, 0, 0]).unwrap()] = c(1.0);
    let rho0 = DensityMatrix::from_ket(space, &ket).unwrap();
    let times: Vec<f64> = (0..=20).map(|i| 0.1 * i as f64).collect();
    let r = evolve(&liouvillian_for(&p).unwrap(), &rho0, &times, EvolveOptions::default()).unwrap();
    for (t, pf) in times.iter().zip(&r.p_f) {
        assert!((pf - (-2.0 * p.gamma * t).exp()).abs() < 1e-8);
    }
}

#[test]
fn ground_state_is_stationary_without_drive() {
    let mut p = bare(3, 2, 4);
    p.g_r = mhz(3.0);
    p.g_a = mhz(3.0);
    p.gamma = 0.1;
    p.kappa_r = 0.2;
    p.kappa_a = 10.0;
    let r = evolve_from_ground(&p, &[0.0, 1.0], EvolveOptions::default()).unwrap();
    assert!((r.p_g[1] - 1.0).abs() < 1e-12);
    assert!(r.mean_n[1].abs() < 1e-12);
}

#[test]
fn wigner_normalization_and_origin_values() {
    let vac = DensityMatrix::fock(30, 0).unwrap();
    let g = wigner(&vac, WignerSpec::default()).unwrap();
    assert!((g.integral() - 1.0).abs() < 1e-2);
    assert!((g.value_at_origin().unwrap() - 1.0 / PI).abs() < 1e-4);

    let one = DensityMatrix::fock(30, 1).unwrap();
    assert!((wigner_at(&one, 0.0, 0.0) + 1.0 / PI).abs() < 1e-12);
    let coh = DensityMatrix::coherent(40, C64::new(1.5, -0.5)).unwrap();
    let g = wigner(&coh, WignerSpec::default()).unwrap();
    assert!((g.integral() - 1.0).abs() < 1e-2);
    let th = DensityMatrix::thermal(60, 2.0).unwrap();
    assert!((wigner(&th, WignerSpec::default()).unwrap().integral() - 1.0).abs() < 1e-2);
    // Thermal peak height 1 / (pi (2 nbar + 1)).
    assert!((wigner_at(&th, 0.0, 0.0) - 1.0 / (PI * 5.0)).abs() < 1e-4);
}

#[test]
fn fano_of_fock_and_coherent_states() {
    for n in 1..10 {
        let s = photon_statistics(&DensityMatrix::fock(20, n).unwrap(), 0).unwrap();
        assert!(s.fano.unwrap().abs() < 1e-12);
    }
    for alpha in [0.5, 1.0, 2.0, 3.0] {
        let s = photon_statistics(&DensityMatrix::coherent(60, C64::new(alpha, 0.0)).unwrap(), 0).unwrap();
        assert!((s.fano.unwrap() - 1.0).abs() < 1e-3);
        assert!((s.mean_n - alpha * alpha).abs() < 1e-3);
    }
}

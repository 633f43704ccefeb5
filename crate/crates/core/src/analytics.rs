// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form dressed-state and effective-rate model.
//!
//! Frequencies and couplings in rad/us, rates in us^-1. Functions taking an
//! `e-f` coupling expect the matrix element between `|f,0,N>` and
//! `|e,1,N>`; see [`EfCoupling`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{to_mhz, SystemParams};

/// How the auxiliary coupling enters the `|f> <-> |e>` manifold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EfCoupling {
    /// Duffing matrix element: `g_ef = sqrt(2) g_a`. Matches the simulated
    /// Hamiltonian.
    Duffing,
    /// `g_ef = g_a`, as in the printed closed forms.
    Bare,
}

impl EfCoupling {
    pub fn g_ef(self, g_a: f64) -> f64 {
        match self {
            EfCoupling::Duffing => std::f64::consts::SQRT_2 * g_a,
            EfCoupling::Bare => g_a,
        }
    }
}

fn check_n(n: i64) -> Result<f64> {
    if n < 0 {
        return Err(Error::Analytic(format!("photon number {n} must be >= 0")));
    }
    Ok(n as f64)
}

/// Doublet splitting `2 g_r sqrt(N + 1)`.
pub fn delta_ge(n: i64, g_r: f64) -> Result<f64> {
    Ok(2.0 * g_r * (check_n(n)? + 1.0).sqrt())
}

/// Eigen-decomposition of the triplet `{|f,0,N>, |e,1,N>, |g,1,N+1>}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Triplet {
    /// Energy gap between the `+` and `-` states.
    pub splitting: f64,
    /// Mixing angle, `tan(theta) = g_ef / (g_r sqrt(N + 1))`, in `[0, pi/2]`.
    pub theta: f64,
    /// Energies of `(+, 0, -)` relative to the bare degenerate level.
    pub energies: [f64; 3],
    /// Amplitudes on `(|f,0,N>, |e,1,N>, |g,1,N+1>)` for `+`, `0`, `-`.
    pub amplitudes: [[f64; 3]; 3],
}

/// Triplet splitting `2 sqrt((N + 1) g_r^2 + g_ef^2)` and eigenvectors.
pub fn delta_gef(n: i64, g_r: f64, g_ef: f64) -> Result<Triplet> {
    let nf = check_n(n)?;
    if g_r == 0.0 && g_ef == 0.0 {
        return Err(Error::DegenerateManifold);
    }
    let b = g_r * (nf + 1.0).sqrt();
    let omega = (b * b + g_ef * g_ef).sqrt();
    let theta = g_ef.atan2(b);
    let (s, c) = theta.sin_cos();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Ok(Triplet {
        splitting: 2.0 * omega,
        theta,
        energies: [omega, 0.0, -omega],
        amplitudes: [[h * s, h, h * c], [c, 0.0, -s], [h * s, -h, h * c]],
    })
}

/// Blockade-breaking drive detuning `[Delta_gef(N+1) - Delta_ge(N)] / 2`.
pub fn pump_detuning(n: i64, g_r: f64, g_ef: f64) -> Result<f64> {
    let upper = delta_gef(n + 1, g_r, g_ef)?.splitting;
    Ok((upper - delta_ge(n, g_r)?) / 2.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Damping {
    Underdamped,
    Critical,
    Overdamped,
}

/// Effective `|f>` decay through the auxiliary cavity.
pub fn kappa_a_eff(g_a: f64, kappa_a: f64) -> (f64, Damping) {
    let disc = kappa_a * kappa_a - 16.0 * g_a * g_a;
    if 4.0 * g_a > kappa_a {
        (kappa_a / 2.0, Damping::Underdamped)
    } else if disc == 0.0 {
        (kappa_a / 2.0, Damping::Critical)
    } else {
        ((kappa_a - disc.sqrt()) / 2.0, Damping::Overdamped)
    }
}

/// Location of the maximum of `kappa_a_eff` over `kappa_a` for fixed `g_a`,
/// as implied by the closed form.
pub fn kappa_a_eff_argmax(g_a: f64) -> f64 {
    4.0 * g_a
}

/// `|f>` population of the two-coupled-two-level model (`|f,0>`
/// coupled to `|e,1>` with strength `g`, cavity decay `kappa`), starting
/// from `|f,0>`.
pub fn decay_curve_rho_ff(t: f64, g: f64, kappa: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Analytic(format!("time {t} must be >= 0")));
    }
    let q = 16.0 * g * g - kappa * kappa;
    let envelope = (-kappa * t / 4.0).exp();
    let amp = if q.abs() <= 1e-12 * (kappa * kappa).max(f64::MIN_POSITIVE) {
        envelope * (1.0 + kappa * t / 4.0)
    } else if q > 0.0 {
        let w = q.sqrt() / 4.0;
        envelope * ((w * t).cos() + kappa / (4.0 * w) * (w * t).sin())
    } else {
        let w = (-q).sqrt() / 4.0;
        // Written with decaying exponentials so large t does not overflow.
        let ep = (-(kappa / 4.0 - w) * t).exp();
        let em = (-(kappa / 4.0 + w) * t).exp();
        0.5 * (ep + em) + kappa / (8.0 * w) * (ep - em)
    };
    Ok(amp * amp)
}

/// The printed underdamped form `e^{-kt/2} cos^2(g't + theta) / cos^2 theta`
/// with `tan theta = kappa / g'`, kept for comparison.
pub fn decay_curve_rho_ff_printed(t: f64, g: f64, kappa: f64) -> Option<f64> {
    let q = 16.0 * g * g - kappa * kappa;
    if q <= 0.0 {
        return None;
    }
    let w = q.sqrt() / 4.0;
    let theta = (kappa / w).atan();
    Some((-kappa * t / 2.0).exp() * (w * t + theta).cos().powi(2) / theta.cos().powi(2))
}

/// Two-photon Rabi frequency `Omega^2 / (2 Delta)`.
pub fn omega_2ph(drive: f64, delta: f64) -> Result<f64> {
    if delta == 0.0 {
        return Err(Error::Analytic("intermediate level is resonant (Delta = 0)".into()));
    }
    Ok(drive * drive / (2.0 * delta))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PumpRegime {
    Weak,
    Strong,
}

/// Effective `|g> -> |e>` pump rate.
pub fn effective_pump_gamma(omega_2ph: f64, kappa_eff: f64) -> (f64, PumpRegime) {
    let w = omega_2ph.abs();
    if 2.0 * w > kappa_eff {
        (kappa_eff / 2.0, PumpRegime::Strong)
    } else {
        let disc = (kappa_eff * kappa_eff - 4.0 * w * w).max(0.0);
        ((kappa_eff - disc.sqrt()) / 2.0, PumpRegime::Weak)
    }
}

/// `N_ss = 2 Gamma / kappa_r`.
pub fn n_ss_analytic(gamma_eff: f64, kappa_r: f64) -> Result<f64> {
    if kappa_r == 0.0 {
        return Err(Error::Divergence("kappa_r = 0: no reservoir loss to balance the pump".into()));
    }
    Ok(2.0 * gamma_eff / kappa_r)
}

/// Stimulated reservoir loss `N kappa_r / 2`.
pub fn kappa_r_eff(n: f64, kappa_r: f64) -> f64 {
    n * kappa_r / 2.0
}

/// Intermediate-level detunings of the two sideband transitions,
/// `alpha/2 -/+ (Delta_gef(1) + Delta_ge(0)) / 4`, as `(plus, minus)`.
pub fn sideband_detunings(alpha: f64, g_r: f64, g_ef: f64) -> Result<(f64, f64)> {
    let shift = (delta_gef(1, g_r, g_ef)?.splitting + delta_ge(0, g_r)?) / 4.0;
    Ok((alpha / 2.0 - shift, alpha / 2.0 + shift))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sidebands {
    pub coupling: EfCoupling,
    pub delta_plus: f64,
    pub delta_minus: f64,
    /// `Omega_2ph(plus) / Omega_2ph(minus) = |Delta_minus| / |Delta_plus|`.
    pub amplitude_ratio: f64,
    pub rate_ratio: f64,
}

pub fn sidebands(alpha: f64, g_r: f64, g_a: f64, coupling: EfCoupling) -> Result<Sidebands> {
    let (dp, dm) = sideband_detunings(alpha, g_r, coupling.g_ef(g_a))?;
    let amplitude_ratio = dm.abs() / dp.abs();
    Ok(Sidebands {
        coupling,
        delta_plus: dp,
        delta_minus: dm,
        amplitude_ratio,
        rate_ratio: amplitude_ratio * amplitude_ratio,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EffectiveRates {
    pub omega_2ph: f64,
    pub kappa_a_eff: f64,
    pub damping: Damping,
    pub gamma_eff: f64,
    pub pump_regime: PumpRegime,
    pub n_ss_analytic: f64,
    /// `kappa_r_eff` evaluated at `n_ss_analytic`; equals `gamma_eff`.
    pub kappa_r_eff: f64,
}

/// The full rate chain for a device, using `Delta = omega_ge - omega_d` as
/// the intermediate detuning.
pub fn effective_rates(p: &SystemParams) -> Result<EffectiveRates> {
    let w2 = omega_2ph(p.drive, p.delta())?;
    let (kae, damping) = kappa_a_eff(p.g_a, p.kappa_a);
    let (gamma_eff, pump_regime) = effective_pump_gamma(w2, kae);
    let n = n_ss_analytic(gamma_eff, p.kappa_r)?;
    Ok(EffectiveRates {
        omega_2ph: w2,
        kappa_a_eff: kae,
        damping,
        gamma_eff,
        pump_regime,
        n_ss_analytic: n,
        kappa_r_eff: kappa_r_eff(n, p.kappa_r),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumRow {
    pub n: i64,
    pub delta_ge: f64,
    pub delta_gef: f64,
    pub theta: f64,
    pub pump_detuning: f64,
    pub pump_detuning_mhz: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DressedSpectrum {
    pub coupling: EfCoupling,
    pub rows: Vec<SpectrumRow>,
}

pub fn dressed_spectrum(g_r: f64, g_a: f64, coupling: EfCoupling, n_max: i64) -> Result<DressedSpectrum> {
    let g_ef = coupling.g_ef(g_a);
    let rows = (0..=n_max)
        .map(|n| {
            let t = delta_gef(n, g_r, g_ef)?;
            let d = pump_detuning(n, g_r, g_ef)?;
            Ok(SpectrumRow {
                n,
                delta_ge: delta_ge(n, g_r)?,
                delta_gef: t.splitting,
                theta: t.theta,
                pump_detuning: d,
                pump_detuning_mhz: to_mhz(d),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DressedSpectrum { coupling, rows })
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyticReport {
    pub units: &'static str,
    pub rates: EffectiveRates,
    pub omega_2ph_mhz: f64,
    pub kappa_a_eff_argmax: f64,
    /// Location claimed in the text (`kappa_a = g_a`), for comparison.
    pub kappa_a_eff_argmax_claimed: f64,
    pub sidebands: Vec<Sidebands>,
    pub spectra: Vec<DressedSpectrum>,
}

/// All intermediate quantities of the analytic model for `p`.
pub fn analytic_report(p: &SystemParams) -> Result<AnalyticReport> {
    let rates = effective_rates(p)?;
    let couplings = [EfCoupling::Duffing, EfCoupling::Bare];
    let sidebands = couplings
        .iter()
        .map(|&c| sidebands(p.alpha, p.g_r, p.g_a, c))
        .collect::<Result<Vec<_>>>()?;
    let spectra = if p.g_r == 0.0 && p.g_a == 0.0 {
        Vec::new()
    } else {
        couplings
            .iter()
            .map(|&c| dressed_spectrum(p.g_r, p.g_a, c, 20))
            .collect::<Result<Vec<_>>>()?
    };
    Ok(AnalyticReport {
        units: "angular frequencies and couplings in rad/us, rates in us^-1",
        omega_2ph_mhz: to_mhz(rates.omega_2ph),
        kappa_a_eff_argmax: kappa_a_eff_argmax(p.g_a),
        kappa_a_eff_argmax_claimed: p.g_a,
        rates,
        sidebands,
        spectra,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::mhz;
    use approx::assert_relative_eq;

    #[test]
    fn doublet() {
        assert_eq!(delta_ge(0, 2.0).unwrap(), 4.0);
        assert_eq!(delta_ge(3, 2.0).unwrap(), 8.0);
        assert!(delta_ge(-1, 2.0).is_err());
    }

    #[test]
    fn triplet_limits() {
        let t = delta_gef(4, 3.0, 0.0).unwrap();
        assert_relative_eq!(t.splitting, delta_ge(4, 3.0).unwrap(), epsilon = 1e-14);
        let t = delta_gef(0, 1.5, 1.5).unwrap();
        assert_relative_eq!(t.splitting, 2.0 * 2f64.sqrt() * 1.5, epsilon = 1e-14);
        assert_relative_eq!(t.theta, std::f64::consts::FRAC_PI_4, epsilon = 1e-15);
        assert!(matches!(delta_gef(0, 0.0, 0.0), Err(Error::DegenerateManifold)));
    }

    #[test]
    fn pump_detuning_without_auxiliary() {
        for n in 0..5 {
            let d = pump_detuning(n, 2.0, 0.0).unwrap();
            let nf = n as f64;
            assert_relative_eq!(d, 2.0 * ((nf + 2.0).sqrt() - (nf + 1.0).sqrt()), epsilon = 1e-13);
        }
    }

    #[test]
    fn kappa_eff_branches() {
        let (v, d) = kappa_a_eff(mhz(23.5), 138.0);
        assert_eq!(d, Damping::Underdamped);
        assert_eq!(v, 69.0);
        let (v, d) = kappa_a_eff(10.0, 40.0);
        assert_eq!((v, d), (20.0, Damping::Critical));
        let (v, _) = kappa_a_eff(0.01, 1000.0);
        assert_relative_eq!(v, 4.0 * 0.01 * 0.01 / 1000.0, max_relative = 1e-6);
    }

    #[test]
    fn decay_curve_basics() {
        for (g, k) in [(10.0, 5.0), (1.0, 30.0), (2.5, 10.0)] {
            assert_relative_eq!(decay_curve_rho_ff(0.0, g, k).unwrap(), 1.0, epsilon = 1e-15);
        }
        assert!(decay_curve_rho_ff(-1.0, 1.0, 1.0).is_err());
        let near = decay_curve_rho_ff(0.3, 2.5 * (1.0 + 1e-9), 10.0).unwrap();
        let at = decay_curve_rho_ff(0.3, 2.5, 10.0).unwrap();
        assert_relative_eq!(near, at, epsilon = 1e-7);
    }

    #[test]
    fn rate_chain_at_optimum() {
        let r = effective_rates(&SystemParams::paper_optimum(60)).unwrap();
        assert_relative_eq!(to_mhz(r.omega_2ph), 3.125, epsilon = 1e-12);
        assert_eq!(r.pump_regime, PumpRegime::Weak);
        assert_relative_eq!(r.kappa_r_eff, r.gamma_eff, epsilon = 1e-12);
        assert!(r.gamma_eff <= r.kappa_a_eff / 2.0);
    }

    #[test]
    fn errors() {
        assert!(omega_2ph(1.0, 0.0).is_err());
        assert_eq!(omega_2ph(0.0, 3.0).unwrap(), 0.0);
        assert!(matches!(n_ss_analytic(1.0, 0.0), Err(Error::Divergence(_))));
        let (g, r) = effective_pump_gamma(10.0, 20.0);
        assert_eq!((g, r), (10.0, PumpRegime::Weak));
        let (g2, _) = effective_pump_gamma(10.0 + 1e-9, 20.0);
        assert_relative_eq!(g, g2, epsilon = 1e-12);
    }
}

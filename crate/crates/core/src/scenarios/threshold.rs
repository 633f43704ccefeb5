// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{mhz, SystemParams, Variant};
use crate::observables::{fock_bimodality, fock_local_maxima, wigner, FockBimodality, WignerGrid, WignerSpec};
use crate::par;
use crate::quantum::{ptrace, RESERVOIR};
use crate::simulation::solve_steady;

use super::sweep::{run_sweep, Axis, SweepOptions, SweepResult};

/// Relative height a Fock or radial peak needs to count.
pub const PEAK_THRESHOLD: f64 = 0.02;
/// Fraction of the smaller Fock peak below which the region between peaks
/// counts as depleted.
pub const GAP_LEVEL: f64 = 0.05;

/// Named coupling point. Points without couplings are placeholders and are
/// skipped.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedPoint {
    pub name: String,
    #[serde(default)]
    pub g_r_mhz: Option<f64>,
    #[serde(default)]
    pub g_a_mhz: Option<f64>,
    #[serde(default)]
    pub note: Option<String>,
}

impl NamedPoint {
    pub fn new(name: &str, g_r_mhz: f64, g_a_mhz: f64) -> Self {
        Self { name: name.into(), g_r_mhz: Some(g_r_mhz), g_a_mhz: Some(g_a_mhz), note: None }
    }

    pub fn placeholder(name: &str) -> Self {
        Self { name: name.into(), g_r_mhz: None, g_a_mhz: None, note: Some("unspecified in paper".into()) }
    }

    pub fn couplings(&self) -> Option<(f64, f64)> {
        Some((self.g_r_mhz?, self.g_a_mhz?))
    }
}

pub fn named_points() -> Vec<NamedPoint> {
    vec![
        NamedPoint::new("B", 1.0, 2.0),
        NamedPoint::placeholder("C"),
        NamedPoint::placeholder("D"),
        NamedPoint::new("E", 5.0, 8.0),
        NamedPoint::new("F", 8.0, 11.0),
        NamedPoint::new("G", 8.0, 15.0),
    ]
}

pub fn named_point(name: &str) -> Option<NamedPoint> {
    named_points().into_iter().find(|p| p.name == name)
}

/// Point and drive at which Fock and Wigner data are reported.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetailRequest {
    pub point: String,
    pub drive_mhz: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ThresholdSpec {
    pub points: Vec<NamedPoint>,
    pub drive_mhz: Vec<f64>,
    pub n_r: usize,
    pub details: Vec<DetailRequest>,
    pub wigner: WignerSpec,
}

impl Default for ThresholdSpec {
    fn default() -> Self {
        Self {
            points: named_points(),
            drive_mhz: (1..=20).map(|i| 2.0 * i as f64).collect(),
            n_r: 45,
            details: [19.5, 20.0, 21.0]
                .iter()
                .map(|&d| DetailRequest { point: "G".into(), drive_mhz: d })
                .collect(),
            wigner: WignerSpec::default(),
        }
    }
}

impl ThresholdSpec {
    /// Every other drive, `n_r <= 25` and a coarser Wigner grid.
    pub fn fast(self) -> Self {
        Self {
            drive_mhz: self.drive_mhz.iter().step_by(2).cloned().collect(),
            n_r: self.n_r.min(25),
            wigner: WignerSpec { points: self.wigner.points.min(101), ..self.wigner },
            ..self
        }
    }
}

/// Drive curve of one coupling point.
#[derive(Clone, Debug, Serialize)]
pub struct DriveCurve {
    pub name: String,
    pub g_r_mhz: f64,
    pub g_a_mhz: f64,
    pub variant: Variant,
    pub sweep: SweepResult,
    /// `(drive MHz, F)` at the largest Fano factor.
    pub fano_peak: Option<(f64, f64)>,
    /// `(drive MHz, N)` at the largest photon number.
    pub mean_n_peak: Option<(f64, f64)>,
    /// Number of Fock peaks per drive.
    pub fock_peaks: Vec<Option<usize>>,
    pub bimodality: Vec<Option<FockBimodality>>,
}

impl DriveCurve {
    pub fn drives(&self) -> Vec<f64> {
        self.sweep.points.iter().map(|p| p.coords[0]).collect()
    }

    /// Largest Fano factor over drives inside `[lo, hi]` MHz.
    pub fn max_fano_in(&self, lo: f64, hi: f64) -> Option<f64> {
        self.sweep
            .points
            .iter()
            .filter(|p| p.coords[0] >= lo && p.coords[0] <= hi)
            .filter_map(|p| p.fano)
            .reduce(f64::max)
    }

    pub fn max_fano(&self) -> Option<f64> {
        self.max_fano_in(f64::NEG_INFINITY, f64::INFINITY)
    }

    /// Whether every drive has at most one Fock peak.
    pub fn single_peaked(&self) -> bool {
        self.fock_peaks.iter().all(|n| n.is_none_or(|n| n <= 1))
    }
}

pub fn drive_curve(
    name: &str,
    base: &SystemParams,
    (g_r_mhz, g_a_mhz): (f64, f64),
    drives: &[f64],
    n_r: usize,
    opts: &SweepOptions,
) -> DriveCurve {
    let params: Vec<SystemParams> = drives
        .iter()
        .map(|&d| SystemParams { g_r: mhz(g_r_mhz), g_a: mhz(g_a_mhz), drive: mhz(d), ..base.clone().with_n_r(n_r) })
        .collect();
    let coords = drives.iter().map(|&d| vec![d]).collect();
    let axes = vec![Axis::new("drive", "MHz", drives.to_vec())];
    let opts = SweepOptions { keep_fock: true, ..*opts };
    let sweep = run_sweep(name, axes, &params, coords, &opts);
    let peak = |f: &dyn Fn(&super::SweepPoint) -> Option<f64>| {
        sweep
            .points
            .iter()
            .filter_map(|p| f(p).map(|v| (p.coords[0], v)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
    };
    let fano_peak = peak(&|p| p.fano);
    let mean_n_peak = peak(&|p| p.mean_n);
    let fock_peaks = sweep.points.iter().map(|p| p.fock.as_ref().map(|f| fock_local_maxima(f, PEAK_THRESHOLD).len())).collect();
    let bimodality = sweep
        .points
        .iter()
        .map(|p| p.fock.as_ref().and_then(|f| fock_bimodality(f, PEAK_THRESHOLD, GAP_LEVEL)))
        .collect();
    DriveCurve {
        name: name.into(),
        g_r_mhz,
        g_a_mhz,
        variant: base.variant,
        sweep,
        fano_peak,
        mean_n_peak,
        fock_peaks,
        bimodality,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Detail {
    pub point: String,
    pub drive_mhz: f64,
    pub mean_n: f64,
    pub fano: Option<f64>,
    pub fock: Vec<f64>,
    pub fock_peaks: Vec<usize>,
    pub bimodality: Option<FockBimodality>,
    pub radial_maxima: usize,
    pub wigner: WignerGrid,
}

/// Fock distribution and Wigner function of the steady reservoir state.
pub fn detail(name: &str, p: &SystemParams, drive_mhz: f64, wigner_spec: WignerSpec, opts: &SweepOptions) -> Result<Detail> {
    let p = p.clone().with_drive_mhz(drive_mhz);
    let r = solve_steady(&p, &opts.steady)?;
    let reservoir = ptrace(&r.rho_ss, RESERVOIR)?;
    let w = wigner(&reservoir, wigner_spec)?;
    let fock = r.photons.fock_probs.clone();
    Ok(Detail {
        point: name.into(),
        drive_mhz,
        mean_n: r.mean_n(),
        fano: r.fano(),
        fock_peaks: fock_local_maxima(&fock, PEAK_THRESHOLD),
        bimodality: fock_bimodality(&fock, PEAK_THRESHOLD, GAP_LEVEL),
        radial_maxima: w.radial_maxima(),
        fock,
        wigner: w,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdResult {
    pub spec: ThresholdSpec,
    pub base: SystemParams,
    pub curves: Vec<DriveCurve>,
    pub skipped: Vec<NamedPoint>,
    pub details: Vec<Detail>,
    pub runtime_seconds: f64,
}

impl ThresholdResult {
    pub fn curve(&self, name: &str) -> Option<&DriveCurve> {
        self.curves.iter().find(|c| c.name == name)
    }

    pub fn truncation_flagged(&self) -> bool {
        self.curves.iter().any(|c| c.sweep.truncation_flagged())
    }
}

/// Photon number and Fano factor against drive amplitude for each named
/// point, plus Fock and Wigner details at requested drives.
pub fn threshold_scan(base: &SystemParams, spec: &ThresholdSpec, opts: &SweepOptions) -> Result<ThresholdResult> {
    let start = Instant::now();
    let (active, skipped): (Vec<_>, Vec<_>) = spec.points.iter().cloned().partition(|p| p.couplings().is_some());
    let curves = active
        .iter()
        .map(|pt| drive_curve(&pt.name, base, pt.couplings().unwrap_or_default(), &spec.drive_mhz, spec.n_r, opts))
        .collect();
    let details = par::map(&spec.details, |req| -> Result<Detail> {
        let pt = active
            .iter()
            .find(|p| p.name == req.point)
            .ok_or_else(|| Error::Config(format!("detail requested for unknown or placeholder point {:?}", req.point)))?;
        let (gr, ga) = pt.couplings().unwrap_or_default();
        let p = SystemParams { g_r: mhz(gr), g_a: mhz(ga), ..base.clone().with_n_r(spec.n_r) };
        detail(&pt.name, &p, req.drive_mhz, spec.wigner, opts)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(ThresholdResult {
        spec: spec.clone(),
        base: base.clone().with_n_r(spec.n_r),
        curves,
        skipped,
        details,
        runtime_seconds: start.elapsed().as_secs_f64(),
    })
}

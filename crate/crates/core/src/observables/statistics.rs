// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use crate::error::Result;
use crate::quantum::{ptrace, DensityMatrix, RESERVOIR, TRANSMON};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhotonStatistics {
    pub mean_n: f64,
    /// Variance over mean; `None` when the mean vanishes.
    pub fano: Option<f64>,
    pub fock_probs: Vec<f64>,
}

impl PhotonStatistics {
    pub fn from_probs(probs: Vec<f64>) -> Self {
        let mean: f64 = probs.iter().enumerate().map(|(n, p)| n as f64 * p).sum();
        let second: f64 = probs.iter().enumerate().map(|(n, p)| (n * n) as f64 * p).sum();
        let fano = if mean > 0.0 { Some(((second - mean * mean) / mean).max(0.0)) } else { None };
        Self { mean_n: mean, fano, fock_probs: probs }
    }
}

/// Photon statistics of one subsystem of `rho`.
pub fn photon_statistics(rho: &DensityMatrix, subsystem: usize) -> Result<PhotonStatistics> {
    let reduced = if rho.space().num_subsystems() == 1 && subsystem == 0 {
        rho.clone()
    } else {
        ptrace(rho, subsystem)?
    };
    let probs = reduced.diagonal().into_iter().map(|p| p.max(0.0)).collect();
    Ok(PhotonStatistics::from_probs(probs))
}

/// Statistics of the reservoir cavity of a full maser state.
pub fn reservoir_statistics(rho: &DensityMatrix) -> Result<PhotonStatistics> {
    photon_statistics(rho, RESERVOIR)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TransmonPopulations {
    pub p_g: f64,
    pub p_e: f64,
    pub p_f: f64,
    pub p_rest: f64,
}

pub fn transmon_populations(rho: &DensityMatrix) -> Result<TransmonPopulations> {
    let diag = if rho.space().num_subsystems() == 1 {
        rho.diagonal()
    } else {
        ptrace(rho, TRANSMON)?.diagonal()
    };
    let at = |i: usize| diag.get(i).copied().unwrap_or(0.0);
    Ok(TransmonPopulations {
        p_g: at(0),
        p_e: at(1),
        p_f: at(2),
        p_rest: diag.iter().skip(3).sum(),
    })
}

/// Indices of strict local maxima of `probs` whose value exceeds
/// `rel_threshold` times the global maximum. End points count when they
/// exceed their single neighbour.
pub fn fock_local_maxima(probs: &[f64], rel_threshold: f64) -> Vec<usize> {
    let max = probs.iter().cloned().fold(0.0, f64::max);
    let n = probs.len();
    (0..n)
        .filter(|&i| {
            let left = i == 0 || probs[i] > probs[i - 1];
            let right = i + 1 == n || probs[i] > probs[i + 1];
            left && right && n > 1 && probs[i] > rel_threshold * max
        })
        .collect()
}

/// Two separated Fock peaks with a depleted region in between.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FockBimodality {
    pub low_peak: usize,
    pub high_peak: usize,
    /// First and last index between the peaks below `gap_level` times the
    /// smaller peak.
    pub gap_start: usize,
    pub gap_end: usize,
    /// Minimum between the peaks relative to the smaller peak.
    pub depth: f64,
}

impl FockBimodality {
    pub fn gap_len(&self) -> usize {
        self.gap_end + 1 - self.gap_start
    }
}

/// The two largest local maxima (above `rel_threshold` of the global
/// maximum) if the distribution drops below `gap_level` of the smaller one
/// somewhere between them.
pub fn fock_bimodality(probs: &[f64], rel_threshold: f64, gap_level: f64) -> Option<FockBimodality> {
    let mut peaks = fock_local_maxima(probs, rel_threshold);
    if peaks.len() < 2 {
        return None;
    }
    peaks.sort_by(|&a, &b| probs[b].total_cmp(&probs[a]));
    let (lo, hi) = (peaks[0].min(peaks[1]), peaks[0].max(peaks[1]));
    let floor = probs[lo].min(probs[hi]);
    let between = &probs[lo + 1..hi];
    let min = between.iter().cloned().fold(f64::INFINITY, f64::min);
    let depth = min / floor;
    if !(depth < gap_level) {
        return None;
    }
    let low = between.iter().position(|&p| p < gap_level * floor)?;
    let high = between.iter().rposition(|&p| p < gap_level * floor)?;
    Some(FockBimodality { low_peak: lo, high_peak: hi, gap_start: lo + 1 + low, gap_end: lo + 1 + high, depth })
}

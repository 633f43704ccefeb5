// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

//! Photon statistics, transmon populations, emitted power and Wigner
//! functions.

mod power;
mod statistics;
mod wigner;

pub use power::{emitted_power, EmittedPower, HBAR};
pub use statistics::{
    fock_bimodality, fock_local_maxima, FockBimodality, photon_statistics, reservoir_statistics, transmon_populations,
    PhotonStatistics, TransmonPopulations,
};
pub use wigner::{
    angular_average, count_radial_maxima, wigner, wigner_at, WignerGrid, WignerSpec,
};

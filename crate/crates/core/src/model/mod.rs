// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

//! Maser Hamiltonian, dissipators and device parameters.

mod config;
mod hamiltonian;
mod params;

pub use config::{CavitySection, DeviceConfig, DriveSection, TransmonSection, UNITS_HEADER};
pub use hamiltonian::{build_hamiltonian, collapse_operators, ModeOperators};
pub use params::{mhz, to_mhz, Dims, SystemParams, Variant};

// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

//! Open-system simulation of a two-photon pumped transmon maser.
//!
//! Internal units: angular frequencies in rad/us, times in us, rates in
//! us^-1. Subsystem order is always (transmon, auxiliary, reservoir).

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod analytics;
pub mod error;
pub mod dynamics;
pub mod model;
pub mod observables;
pub mod optimizer;
pub mod par;
pub mod quantum;
pub mod scenarios;
pub mod simulation;

pub use error::{Error, Result};

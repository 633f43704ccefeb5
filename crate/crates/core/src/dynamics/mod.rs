// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

//! Lindblad master equation: superoperator assembly, time evolution and
//! steady states.

mod evolve;
mod gmres;
mod liouvillian;
mod steady;
mod sylvester;

pub use evolve::{evolve, propagate, EvolutionResult, EvolveOptions};
pub use gmres::{gmres, GmresOptions, GmresOutcome};
pub use liouvillian::{build_liouvillian, Liouvillian};
pub use steady::{evolution as steady_state_by_evolution, steady_state, SteadyMethod, SteadyOptions, SteadyState};
pub use sylvester::SylvesterPreconditioner;

// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

//! Derivative-free maximization of the emitted power.

mod nelder_mead;
mod power;

pub use nelder_mead::{nelder_mead, NelderMeadOptions, NelderMeadResult, SimplexSnapshot};
pub use power::{
    multi_start, optimize_power, optimize_power_from, Evaluation, FreeParam, FreeVariable, OptProblem,
    OptResult, PowerObjective,
};

// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors produced by the simulation library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension {dim}: must be at least {min}")]
    InvalidDimension { dim: usize, min: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("subsystem index {index} out of range for a space with {count} subsystems")]
    SubsystemIndex { index: usize, count: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("step size underflow at t = {t} us (h = {step:e}); the problem is too stiff for the requested tolerances")]
    Stiffness { t: f64, step: f64 },

    #[error("steady state is not unique (residual {residual:e}); retry with the long-time evolution fallback")]
    AmbiguousSteadyState { residual: f64 },

    #[error("solver failure: {0}")]
    Solver(String),

    #[error("degenerate manifold: g_r and g_a are both zero")]
    DegenerateManifold,

    #[error("analytic model undefined: {0}")]
    Analytic(String),

    #[error("optimizer diverged: {0}")]
    Divergence(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

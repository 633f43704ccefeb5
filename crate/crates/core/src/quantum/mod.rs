// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

//! Composite Hilbert spaces, sparse operators and density matrices.

mod operator;
mod space;
mod state;

pub use num_complex::Complex64 as C64;
pub use operator::OperatorMatrix;
pub use space::{HilbertSpace, AUXILIARY, RESERVOIR, TRANSMON};
pub use state::{expect, ptrace, DensityMatrix};

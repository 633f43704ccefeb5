// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

//! Parameter sweeps and the named figure scenarios built on them.

mod appendix;
mod coupling;
mod fig2;
mod spectroscopy;
mod sweep;
mod threshold;

pub use appendix::{
    direct_pump_scan, variant_comparison, DirectPumpCurve, DirectPumpResult, DirectPumpSpec, VariantComparison,
    VariantSpec,
};
pub use coupling::{coupling_sweep, CouplingMap, CouplingSpec};
pub use fig2::{dominant_period, fig2, Fig2Panel, Fig2Result, Fig2Spec};
pub use spectroscopy::{point_a, predicted_lines, spectroscopy, PredictedLines, SpectroscopyResult, SpectroscopySpec, TransientRow};
pub use sweep::{run_sweep, truncation_check, Axis, SweepOptions, SweepPoint, SweepResult, TruncationCheck, TRUNCATION_SHIFT_LIMIT};
pub use threshold::{
    detail, drive_curve, named_point, named_points, threshold_scan, Detail, DetailRequest, DriveCurve, NamedPoint,
    ThresholdResult, ThresholdSpec, GAP_LEVEL, PEAK_THRESHOLD,
};

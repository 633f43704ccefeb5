// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use super::params::{SystemParams, Variant};
use crate::error::Result;
use crate::quantum::{HilbertSpace, OperatorMatrix, AUXILIARY, C64, RESERVOIR, TRANSMON};

/// Mode operators embedded in the full space.
#[derive(Clone, Debug)]
pub struct ModeOperators {
    pub space: HilbertSpace,
    pub b: OperatorMatrix,
    pub a_r: OperatorMatrix,
    /// `None` when the auxiliary cavity is truncated to one level.
    pub a_a: Option<OperatorMatrix>,
}

impl ModeOperators {
    pub fn new(p: &SystemParams) -> Result<Self> {
        let space = p.space()?;
        let b = OperatorMatrix::embed(&space, TRANSMON, &OperatorMatrix::annihilation(p.dims.n_t)?)?;
        let a_r = OperatorMatrix::embed(&space, RESERVOIR, &OperatorMatrix::annihilation(p.dims.n_r)?)?;
        let a_a = if p.dims.n_a >= 2 {
            Some(OperatorMatrix::embed(&space, AUXILIARY, &OperatorMatrix::annihilation(p.dims.n_a)?)?)
        } else {
            None
        };
        Ok(Self { space, b, a_r, a_a })
    }

    /// Total excitation number `b^dag b + a_r^dag a_r + a_a^dag a_a`.
    pub fn excitation_number(&self) -> OperatorMatrix {
        let mut n = &self.b.adjoint() * &self.b;
        n = &n + &(&self.a_r.adjoint() * &self.a_r);
        if let Some(a) = &self.a_a {
            n = &n + &(&a.adjoint() * a);
        }
        n
    }
}

/// Rotating-frame Hamiltonian in rad/us.
pub fn build_hamiltonian(p: &SystemParams) -> Result<OperatorMatrix> {
    p.validate()?;
    let ops = ModeOperators::new(p)?;
    let space = &ops.space;
    let id = OperatorMatrix::identity(space.clone());
    let nb = &ops.b.adjoint() * &ops.b;

    let mut h = &nb * p.delta();
    h = &h + &(&(&nb * &(&nb - &id)) * (p.alpha / 2.0));
    h = &h + &(&(&ops.b + &ops.b.adjoint()) * (p.drive / 2.0));

    let nr = &ops.a_r.adjoint() * &ops.a_r;
    h = &h + &(&(&nr + &(&id * 0.5)) * p.delta_r());

    let b_res = match p.variant {
        Variant::Standard => ops.b.clone(),
        Variant::UnityLowering => {
            OperatorMatrix::embed(space, TRANSMON, &OperatorMatrix::unity_lowering(p.dims.n_t)?)?
        }
    };
    h = &h + &(&exchange(&b_res, &ops.a_r) * p.g_r);

    match &ops.a_a {
        Some(a_a) => {
            let na = &a_a.adjoint() * a_a;
            h = &h + &(&(&na + &(&id * 0.5)) * p.delta_a());
            h = &h + &(&exchange(&ops.b, a_a) * p.g_a);
        }
        None => {
            // A single auxiliary level still carries its zero-point term.
            h = &h + &(&id * (0.5 * p.delta_a()));
        }
    }
    Ok(h.pruned(0.0))
}

/// `b a^dag + b^dag a`.
fn exchange(b: &OperatorMatrix, a: &OperatorMatrix) -> OperatorMatrix {
    &(b * &a.adjoint()) + &(&b.adjoint() * a)
}

/// Lindblad operators `sqrt(gamma) b`, `sqrt(kappa_r) a_r`, `sqrt(kappa_a) a_a`
/// and, for `gamma_phi > 0`, `sqrt(2 gamma_phi) b^dag b`. Zero rates are
/// omitted.
pub fn collapse_operators(p: &SystemParams) -> Result<Vec<OperatorMatrix>> {
    p.validate()?;
    let ops = ModeOperators::new(p)?;
    let mut out = Vec::new();
    if p.gamma > 0.0 {
        out.push(&ops.b * p.gamma.sqrt());
    }
    if p.kappa_r > 0.0 {
        out.push(&ops.a_r * p.kappa_r.sqrt());
    }
    if let Some(a_a) = &ops.a_a {
        if p.kappa_a > 0.0 {
            out.push(a_a * p.kappa_a.sqrt());
        }
    }
    if p.gamma_phi > 0.0 {
        let nb = &ops.b.adjoint() * &ops.b;
        out.push(nb.scale(C64::new((2.0 * p.gamma_phi).sqrt(), 0.0)));
    }
    Ok(out)
}

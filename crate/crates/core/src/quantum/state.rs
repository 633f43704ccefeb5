// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use faer::{Mat, Side};

use super::operator::OperatorMatrix;
use super::space::HilbertSpace;
use super::C64;
use crate::error::{Error, Result};

/// Tolerances applied by [`DensityMatrix::validate`].
pub const HERMITICITY_TOL: f64 = 1e-9;
pub const TRACE_TOL: f64 = 1e-7;
pub const POSITIVITY_TOL: f64 = -1e-7;

/// Dense density matrix on a composite space.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    space: HilbertSpace,
    data: Mat<C64>,
}

impl DensityMatrix {
    /// Wraps a dense matrix without checking physical validity.
    pub fn from_mat(space: HilbertSpace, data: Mat<C64>) -> Result<Self> {
        let n = space.total();
        if data.nrows() != n || data.ncols() != n {
            return Err(Error::Shape(format!(
                "matrix is {}x{}, space has dimension {n}",
                data.nrows(),
                data.ncols()
            )));
        }
        Ok(Self { space, data })
    }

    /// Pure state `|psi><psi|`; the ket is normalized first.
    pub fn from_ket(space: HilbertSpace, ket: &[C64]) -> Result<Self> {
        let n = space.total();
        if ket.len() != n {
            return Err(Error::Shape(format!("ket of length {} for dimension {n}", ket.len())));
        }
        let norm = ket.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidState("ket has zero or non-finite norm".into()));
        }
        let data = Mat::from_fn(n, n, |i, j| ket[i] * ket[j].conj() / (norm * norm));
        Ok(Self { space, data })
    }

    /// Fock state `|n><n|` on a single mode of dimension `dim`.
    pub fn fock(dim: usize, n: usize) -> Result<Self> {
        if n >= dim {
            return Err(Error::InvalidState(format!("Fock level {n} outside dimension {dim}")));
        }
        let space = HilbertSpace::single(dim)?;
        let mut ket = vec![C64::default(); dim];
        ket[n] = C64::new(1.0, 0.0);
        Self::from_ket(space, &ket)
    }

    /// Coherent state built from its Fock series and renormalized on the
    /// truncated space.
    pub fn coherent(dim: usize, alpha: C64) -> Result<Self> {
        let space = HilbertSpace::single(dim)?;
        let mut ket = Vec::with_capacity(dim);
        let mut c = C64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
        for n in 0..dim {
            if n > 0 {
                c = c * alpha / (n as f64).sqrt();
            }
            ket.push(c);
        }
        Self::from_ket(space, &ket)
    }

    /// Thermal state with mean occupation `nbar` (truncated, renormalized).
    pub fn thermal(dim: usize, nbar: f64) -> Result<Self> {
        if !(nbar >= 0.0) {
            return Err(Error::InvalidParams(format!("thermal occupation {nbar} must be >= 0")));
        }
        let probs: Vec<f64> = if nbar == 0.0 {
            (0..dim).map(|n| if n == 0 { 1.0 } else { 0.0 }).collect()
        } else {
            let q = nbar / (1.0 + nbar);
            (0..dim).map(|n| q.powi(n as i32) / (1.0 + nbar)).collect()
        };
        Self::diagonal_state(HilbertSpace::single(dim)?, &probs)
    }

    /// Diagonal state from (unnormalized) probabilities.
    pub fn diagonal_state(space: HilbertSpace, probs: &[f64]) -> Result<Self> {
        let n = space.total();
        if probs.len() != n {
            return Err(Error::Shape(format!("{} probabilities for dimension {n}", probs.len())));
        }
        let total: f64 = probs.iter().sum();
        if !(total > 0.0) || probs.iter().any(|&p| p < 0.0) {
            return Err(Error::InvalidState("probabilities must be non-negative with positive sum".into()));
        }
        let mut data = Mat::zeros(n, n);
        for (i, p) in probs.iter().enumerate() {
            data[(i, i)] = C64::new(p / total, 0.0);
        }
        Ok(Self { space, data })
    }

    /// All population in basis state 0.
    pub fn ground(space: HilbertSpace) -> Self {
        let n = space.total();
        let mut data = Mat::zeros(n, n);
        data[(0, 0)] = C64::new(1.0, 0.0);
        Self { space, data }
    }

    pub fn maximally_mixed(space: HilbertSpace) -> Self {
        let n = space.total();
        let data = Mat::from_fn(n, n, |i, j| if i == j { C64::new(1.0 / n as f64, 0.0) } else { C64::default() });
        Self { space, data }
    }

    /// Tensor product of single-subsystem states, in order.
    pub fn product(factors: &[DensityMatrix]) -> Result<Self> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| Error::Shape("product of zero factors".into()))?;
        let mut space = first.space.clone();
        let mut data = first.data.clone();
        for f in rest {
            let (na, nb) = (data.nrows(), f.data.nrows());
            data = Mat::from_fn(na * nb, na * nb, |i, j| {
                data[(i / nb, j / nb)] * f.data[(i % nb, j % nb)]
            });
            space = space.join(&f.space);
        }
        Ok(Self { space, data })
    }

    /// Rebuilds a state from its column-stacked vectorization.
    pub fn from_vec(space: HilbertSpace, v: &[C64]) -> Result<Self> {
        let n = space.total();
        if v.len() != n * n {
            return Err(Error::Shape(format!("vector of length {} for dimension {n}", v.len())));
        }
        Ok(Self { space, data: Mat::from_fn(n, n, |i, j| v[j * n + i]) })
    }

    /// Column-stacked vectorization: element `(i, j)` lands at `j * D + i`.
    pub fn vectorize(&self) -> Vec<C64> {
        let n = self.dim();
        let mut v = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                v.push(self.data[(i, j)]);
            }
        }
        v
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn matrix(&self) -> &Mat<C64> {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[(row, col)]
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim()).map(|i| self.data[(i, i)]).sum()
    }

    /// Real parts of the diagonal.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.data[(i, i)].re).collect()
    }

    pub fn purity(&self) -> f64 {
        let n = self.dim();
        let mut s = 0.0;
        for j in 0..n {
            for i in 0..n {
                s += self.data[(i, j)].norm_sqr();
            }
        }
        s
    }

    /// Max-abs element of `rho - rho^dag`.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim();
        let mut e: f64 = 0.0;
        for j in 0..n {
            for i in 0..=j {
                e = e.max((self.data[(i, j)] - self.data[(j, i)].conj()).norm());
            }
        }
        e
    }

    /// `(rho + rho^dag) / 2`.
    pub fn symmetrized(&self) -> Self {
        let n = self.dim();
        let data = Mat::from_fn(n, n, |i, j| (self.data[(i, j)] + self.data[(j, i)].conj()) * 0.5);
        Self { space: self.space.clone(), data }
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        self.symmetrized()
            .data
            .self_adjoint_eigenvalues(Side::Lower)
            .map_err(|e| Error::Solver(format!("eigenvalue decomposition failed: {e:?}")))
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigenvalues()?.first().copied().unwrap_or(0.0))
    }

    /// Checks hermiticity, unit trace and positivity at the library tolerances.
    pub fn validate(&self) -> Result<()> {
        let herm = self.hermiticity_error();
        if herm > HERMITICITY_TOL {
            return Err(Error::InvalidState(format!("not Hermitian: max |rho - rho^dag| = {herm:e}")));
        }
        let tr = self.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min = self.min_eigenvalue()?;
        if min < POSITIVITY_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }

    /// Uhlmann fidelity `(Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2`.
    pub fn fidelity(&self, other: &DensityMatrix) -> Result<f64> {
        if self.space != other.space {
            return Err(Error::Shape("fidelity between states on different spaces".into()));
        }
        let sqrt_rho = hermitian_sqrt(&self.symmetrized().data)?;
        let inner = &sqrt_rho * &other.symmetrized().data * &sqrt_rho;
        let inner = Mat::from_fn(inner.nrows(), inner.ncols(), |i, j| {
            (inner[(i, j)] + inner[(j, i)].conj()) * 0.5
        });
        let evals = inner
            .self_adjoint_eigenvalues(Side::Lower)
            .map_err(|e| Error::Solver(format!("eigenvalue decomposition failed: {e:?}")))?;
        let s: f64 = evals.iter().map(|&l| l.max(0.0).sqrt()).sum();
        Ok(s * s)
    }

    /// Max-abs element difference.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        let n = self.dim().min(other.dim());
        let mut e: f64 = 0.0;
        for j in 0..n {
            for i in 0..n {
                e = e.max((self.data[(i, j)] - other.data[(i, j)]).norm());
            }
        }
        e
    }
}

fn hermitian_sqrt(m: &Mat<C64>) -> Result<Mat<C64>> {
    let evd = m
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Solver(format!("eigen decomposition failed: {e:?}")))?;
    let u = evd.U();
    let s = evd.S().column_vector();
    let n = m.nrows();
    let scaled = Mat::from_fn(n, n, |i, j| u[(i, j)] * s[j].re.max(0.0).sqrt());
    Ok(&scaled * u.adjoint())
}

/// `Tr(op * rho)`.
pub fn expect(op: &OperatorMatrix, rho: &DensityMatrix) -> Result<C64> {
    if op.space() != rho.space() {
        return Err(Error::Shape(format!(
            "operator space {:?} differs from state space {:?}",
            op.space().dims(),
            rho.space().dims()
        )));
    }
    let mut sum = C64::default();
    for (v, (i, j)) in op.csr().iter() {
        sum += v * rho.data[(j, i)];
    }
    Ok(sum)
}

/// Reduced state of subsystem `keep`.
pub fn ptrace(rho: &DensityMatrix, keep: usize) -> Result<DensityMatrix> {
    let space = rho.space();
    let dk = space.dim(keep)?;
    let dims = space.dims();
    let inner: usize = dims[keep + 1..].iter().product();
    let outer: usize = dims[..keep].iter().product();
    let mut out = Mat::<C64>::zeros(dk, dk);
    for o in 0..outer {
        for r in 0..inner {
            let base = o * dk * inner + r;
            for a in 0..dk {
                for b in 0..dk {
                    out[(a, b)] += rho.data[(base + a * inner, base + b * inner)];
                }
            }
        }
    }
    DensityMatrix::from_mat(HilbertSpace::single(dk)?, out)
}

// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use sprs::CsMat;

use crate::error::{Error, Result};
use crate::quantum::{DensityMatrix, HilbertSpace, OperatorMatrix, C64};

/// Lindblad superoperator acting on column-stacked density matrices,
/// `vec(A rho B) = (B^T ⊗ A) vec(rho)`. Entries in us^-1.
#[derive(Clone, Debug)]
pub struct Liouvillian {
    space: HilbertSpace,
    matrix: CsMat<C64>,
    hamiltonian: OperatorMatrix,
    collapse: Vec<OperatorMatrix>,
}

/// `L rho = -i[H, rho] + sum_k (c_k rho c_k^dag - {c_k^dag c_k, rho} / 2)`.
pub fn build_liouvillian(h: &OperatorMatrix, cs: &[OperatorMatrix]) -> Result<Liouvillian> {
    let space = h.space().clone();
    if let Some(c) = cs.iter().find(|c| c.space() != &space) {
        return Err(Error::Shape(format!(
            "collapse operator on {:?} but Hamiltonian on {:?}",
            c.space().dims(),
            space.dims()
        )));
    }
    let id = OperatorMatrix::identity(space.clone());
    let minus_i = C64::new(0.0, -1.0);

    let mut l = &id.kron(h) - &h.transpose().kron(&id);
    l = l.scale(minus_i);
    for c in cs {
        let cdc = &c.adjoint() * c;
        l = &l + &c.conj().kron(c);
        l = &l - &(&id.kron(&cdc) * 0.5);
        l = &l - &(&cdc.transpose().kron(&id) * 0.5);
    }
    let matrix = l.pruned(0.0).csr().clone();
    Ok(Liouvillian { space, matrix, hamiltonian: h.clone(), collapse: cs.to_vec() })
}

impl Liouvillian {
    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    /// Hilbert-space dimension `D`; the superoperator is `D^2 x D^2`.
    pub fn hilbert_dim(&self) -> usize {
        self.space.total()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn nnz(&self) -> usize {
        self.matrix.nnz()
    }

    pub fn matrix(&self) -> &CsMat<C64> {
        &self.matrix
    }

    pub fn hamiltonian(&self) -> &OperatorMatrix {
        &self.hamiltonian
    }

    pub fn collapse_operators(&self) -> &[OperatorMatrix] {
        &self.collapse
    }

    pub fn has_dissipation(&self) -> bool {
        self.collapse.iter().any(|c| c.nnz() > 0)
    }

    /// Largest entry modulus, used as the scale for residual checks.
    pub fn max_abs(&self) -> f64 {
        self.matrix.data().iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// `y = L x`.
    pub fn apply(&self, x: &[C64], y: &mut [C64]) {
        let indptr = self.matrix.indptr();
        let indptr = indptr.raw_storage();
        let idx = self.matrix.indices();
        let val = self.matrix.data();
        for (row, yi) in y.iter_mut().enumerate() {
            let mut s = C64::default();
            for k in indptr[row]..indptr[row + 1] {
                s += val[k] * x[idx[k]];
            }
            *yi = s;
        }
    }

    /// Max-norm of `L vec(rho)`.
    pub fn residual(&self, rho: &DensityMatrix) -> f64 {
        let x = rho.vectorize();
        let mut y = vec![C64::default(); x.len()];
        self.apply(&x, &mut y);
        max_norm(&y)
    }

    /// Max over columns of `|sum_i L[ii, col]|`: zero when the trace is
    /// conserved.
    pub fn trace_left_null_error(&self) -> f64 {
        let d = self.hilbert_dim();
        let mut sums = vec![C64::default(); self.dim()];
        for i in 0..d {
            let row = i * d + i;
            if let Some(r) = self.matrix.outer_view(row) {
                for (col, v) in r.iter() {
                    sums[col] += *v;
                }
            }
        }
        max_norm(&sums)
    }

    /// Dense copy for small-system checks.
    pub fn to_dense(&self) -> faer::Mat<C64> {
        let n = self.dim();
        let mut m = faer::Mat::zeros(n, n);
        for (v, (i, j)) in self.matrix.iter() {
            m[(i, j)] += *v;
        }
        m
    }
}

pub(crate) fn max_norm(v: &[C64]) -> f64 {
    v.iter().fold(0.0, |m, z| m.max(z.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn commutator_convention() {
        let a = OperatorMatrix::annihilation(3).unwrap();
        let h = &(&a.adjoint() * &a) + &(&a + &a.adjoint());
        let l = build_liouvillian(&h, &[]).unwrap();
        let rho = DensityMatrix::coherent(3, C64::new(0.4, 0.1)).unwrap();
        let mut y = vec![C64::default(); 9];
        l.apply(&rho.vectorize(), &mut y);
        let hr = &h.to_dense() * rho.matrix();
        let rh = rho.matrix() * &h.to_dense();
        for j in 0..3 {
            for i in 0..3 {
                let expected = C64::new(0.0, -1.0) * (hr[(i, j)] - rh[(i, j)]);
                assert_relative_eq!((y[j * 3 + i] - expected).norm(), 0.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn trace_is_left_null() {
        let a = OperatorMatrix::annihilation(4).unwrap();
        let h = &(&a + &a.adjoint()) * 0.7;
        let cs = vec![&a * 0.5, &(&a.adjoint() * &a) * 0.2];
        let l = build_liouvillian(&h, &cs).unwrap();
        assert!(l.trace_left_null_error() < 1e-14);
        assert!(l.has_dissipation());
    }

    #[test]
    fn space_mismatch() {
        let h = OperatorMatrix::number(3).unwrap();
        let c = OperatorMatrix::annihilation(2).unwrap();
        assert!(matches!(build_liouvillian(&h, &[c]), Err(Error::Shape(_))));
    }
}

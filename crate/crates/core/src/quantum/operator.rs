// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

//! Sparse complex operators on composite Hilbert spaces.

use std::ops::{Add, Mul, Sub};

use faer::Mat;
use sprs::{CsMat, TriMat};

use super::space::HilbertSpace;
use super::C64;
use crate::error::{Error, Result};

/// Square sparse complex matrix (CSR storage) tagged with the Hilbert space
/// it acts on.
///
/// Units follow the role of the operator: rad/us for Hamiltonians,
/// us^-1/2 for collapse operators, dimensionless otherwise.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    space: HilbertSpace,
    data: CsMat<C64>,
}

impl OperatorMatrix {
    /// Builds an operator from `(row, col, value)` entries. Duplicate entries
    /// are summed.
    pub fn from_triplets<I>(space: HilbertSpace, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, C64)>,
    {
        let n = space.total();
        let mut tri = TriMat::new((n, n));
        for (i, j, v) in entries {
            if i >= n || j >= n {
                return Err(Error::Shape(format!("entry ({i}, {j}) outside a {n}x{n} operator")));
            }
            tri.add_triplet(i, j, v);
        }
        Ok(Self { space, data: tri.to_csr() })
    }

    /// Wraps an existing CSR matrix.
    pub fn from_csr(space: HilbertSpace, data: CsMat<C64>) -> Result<Self> {
        let n = space.total();
        if data.rows() != n || data.cols() != n {
            return Err(Error::Shape(format!(
                "matrix is {}x{}, space has dimension {n}",
                data.rows(),
                data.cols()
            )));
        }
        let data = if data.is_csr() { data } else { data.to_csr() };
        Ok(Self { space, data })
    }

    pub fn identity(space: HilbertSpace) -> Self {
        let n = space.total();
        Self { space, data: CsMat::eye(n) }
    }

    pub fn zeros(space: HilbertSpace) -> Self {
        let n = space.total();
        Self { space, data: CsMat::zero((n, n)) }
    }

    /// Bosonic annihilation operator truncated to `dim` levels:
    /// `a[n-1, n] = sqrt(n)`.
    pub fn annihilation(dim: usize) -> Result<Self> {
        Self::lowering_with(dim, |n| (n as f64).sqrt())
    }

    /// Lowering operator whose non-zero elements are all one.
    pub fn unity_lowering(dim: usize) -> Result<Self> {
        Self::lowering_with(dim, |_| 1.0)
    }

    fn lowering_with(dim: usize, element: impl Fn(usize) -> f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension { dim, min: 2 });
        }
        let space = HilbertSpace::single(dim)?;
        Self::from_triplets(space, (1..dim).map(|n| (n - 1, n, C64::new(element(n), 0.0))))
    }

    /// Number operator `a^dag a` on `dim` levels.
    pub fn number(dim: usize) -> Result<Self> {
        if dim < 1 {
            return Err(Error::InvalidDimension { dim, min: 1 });
        }
        let space = HilbertSpace::single(dim)?;
        Self::from_triplets(space, (0..dim).map(|n| (n, n, C64::new(n as f64, 0.0))))
    }

    /// Diagonal operator on a single factor.
    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let space = HilbertSpace::single(values.len())?;
        Self::from_triplets(
            space,
            values.iter().enumerate().map(|(i, &v)| (i, i, C64::new(v, 0.0))),
        )
    }

    /// Kronecker product `self ⊗ other`; the resulting space concatenates
    /// the factors.
    pub fn kron(&self, other: &OperatorMatrix) -> OperatorMatrix {
        let data = sprs::kronecker_product(self.data.view(), other.data.view());
        let data = if data.is_csr() { data } else { data.to_csr() };
        OperatorMatrix { space: self.space.join(&other.space), data }
    }

    /// Tensor product of one operator per factor of `space`, in order.
    pub fn tensor(space: &HilbertSpace, factors: &[OperatorMatrix]) -> Result<Self> {
        if factors.len() != space.num_subsystems() {
            return Err(Error::Shape(format!(
                "{} factors supplied for a space with {} subsystems",
                factors.len(),
                space.num_subsystems()
            )));
        }
        for (k, (f, &d)) in factors.iter().zip(space.dims()).enumerate() {
            if f.dim() != d {
                return Err(Error::Shape(format!(
                    "factor {k} has dimension {}, subsystem {k} has dimension {d}",
                    f.dim()
                )));
            }
        }
        let mut out = factors[0].clone();
        for f in &factors[1..] {
            out = out.kron(f);
        }
        out.space = space.clone();
        Ok(out)
    }

    /// Embeds a single-factor operator at position `index`, with identities
    /// on every other factor.
    pub fn embed(space: &HilbertSpace, index: usize, op: &OperatorMatrix) -> Result<Self> {
        let d = space.dim(index)?;
        if op.dim() != d {
            return Err(Error::Shape(format!(
                "operator of dimension {} cannot act on subsystem {index} of dimension {d}",
                op.dim()
            )));
        }
        let factors = space
            .dims()
            .iter()
            .enumerate()
            .map(|(k, &dk)| {
                if k == index {
                    Ok(op.clone())
                } else {
                    Ok(OperatorMatrix::identity(HilbertSpace::single(dk)?))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::tensor(space, &factors)
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.data.rows()
    }

    pub fn nnz(&self) -> usize {
        self.data.nnz()
    }

    pub fn csr(&self) -> &CsMat<C64> {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data.get(row, col).copied().unwrap_or_default()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> OperatorMatrix {
        let data = self.data.transpose_view().to_csr().map(|z| z.conj());
        OperatorMatrix { space: self.space.clone(), data }
    }

    /// Plain transpose.
    pub fn transpose(&self) -> OperatorMatrix {
        OperatorMatrix { space: self.space.clone(), data: self.data.transpose_view().to_csr() }
    }

    /// Element-wise complex conjugate.
    pub fn conj(&self) -> OperatorMatrix {
        OperatorMatrix { space: self.space.clone(), data: self.data.map(|z| z.conj()) }
    }

    pub fn scale(&self, factor: C64) -> OperatorMatrix {
        OperatorMatrix { space: self.space.clone(), data: self.data.map(|z| z * factor) }
    }

    fn check_same_space(&self, other: &OperatorMatrix) -> Result<()> {
        if self.space != other.space {
            return Err(Error::Shape(format!(
                "operators act on different spaces {:?} and {:?}",
                self.space.dims(),
                other.space.dims()
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.check_same_space(other)?;
        Ok(OperatorMatrix { space: self.space.clone(), data: &self.data + &other.data })
    }

    pub fn try_sub(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.check_same_space(other)?;
        Ok(OperatorMatrix { space: self.space.clone(), data: &self.data - &other.data })
    }

    pub fn try_mul(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.check_same_space(other)?;
        Ok(OperatorMatrix { space: self.space.clone(), data: &self.data * &other.data })
    }

    /// Commutator `[self, other]`.
    pub fn commutator(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// Drops stored entries with modulus at most `tol`.
    pub fn pruned(&self, tol: f64) -> OperatorMatrix {
        let n = self.dim();
        let mut tri = TriMat::new((n, n));
        for (v, (i, j)) in self.data.iter() {
            if v.norm() > tol {
                tri.add_triplet(i, j, *v);
            }
        }
        OperatorMatrix { space: self.space.clone(), data: tri.to_csr() }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.data().iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Max-abs element of `self - self^dag`.
    pub fn hermiticity_error(&self) -> f64 {
        (&self.data - &self.adjoint().data)
            .data()
            .iter()
            .fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    pub fn to_dense(&self) -> Mat<C64> {
        let n = self.dim();
        let mut m = Mat::zeros(n, n);
        for (v, (i, j)) in self.data.iter() {
            m[(i, j)] += *v;
        }
        m
    }

    /// `y = self * x` for a dense vector.
    pub fn apply(&self, x: &[C64], y: &mut [C64]) {
        for (row, yi) in self.data.outer_iterator().zip(y.iter_mut()) {
            *yi = row.iter().map(|(j, v)| v * x[j]).sum();
        }
    }

    /// `self * |basis>` as a dense vector.
    pub fn apply_to_basis(&self, index: usize) -> Vec<C64> {
        let mut x = vec![C64::default(); self.dim()];
        x[index] = C64::new(1.0, 0.0);
        let mut y = vec![C64::default(); self.dim()];
        self.apply(&x, &mut y);
        y
    }
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;

    /// Panics when the operands act on different spaces.
    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.try_add(rhs).expect("operator addition")
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.try_sub(rhs).expect("operator subtraction")
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.try_mul(rhs).expect("operator product")
    }
}

impl Mul<f64> for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn mul(self, rhs: f64) -> OperatorMatrix {
        self.scale(C64::new(rhs, 0.0))
    }
}

impl Mul<C64> for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn mul(self, rhs: C64) -> OperatorMatrix {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn annihilation_dim2() {
        let a = OperatorMatrix::annihilation(2).unwrap();
        assert_eq!(a.get(0, 1), c(1.0));
        assert_eq!(a.get(1, 0), c(0.0));
        assert_eq!(a.nnz(), 1);
    }

    #[test]
    fn annihilation_dim3() {
        let a = OperatorMatrix::annihilation(3).unwrap();
        assert_eq!(a.get(0, 1), c(1.0));
        assert_relative_eq!(a.get(1, 2).re, 2f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn number_eigenvalue_dim4() {
        let a = OperatorMatrix::annihilation(4).unwrap();
        let n = &a.adjoint() * &a;
        let v = n.apply_to_basis(3);
        assert_relative_eq!(v[3].re, 3.0, epsilon = 1e-14);
        assert!(v[..3].iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn canonical_commutator_below_top_level() {
        for d in 2..8 {
            let a = OperatorMatrix::annihilation(d).unwrap();
            let comm = a.commutator(&a.adjoint()).unwrap().to_dense();
            for i in 0..d {
                for j in 0..d {
                    if i == d - 1 && j == d - 1 {
                        continue;
                    }
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert_relative_eq!(comm[(i, j)].re, expected, epsilon = 1e-12);
                    assert_relative_eq!(comm[(i, j)].im, 0.0, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn invalid_dimensions() {
        assert!(matches!(
            OperatorMatrix::annihilation(1),
            Err(Error::InvalidDimension { dim: 1, min: 2 })
        ));
        assert!(OperatorMatrix::unity_lowering(0).is_err());
    }

    #[test]
    fn unity_lowering_elements() {
        let s2 = OperatorMatrix::unity_lowering(2).unwrap().to_dense();
        let a2 = OperatorMatrix::annihilation(2).unwrap().to_dense();
        assert_eq!(s2, a2);
        let s3 = OperatorMatrix::unity_lowering(3).unwrap();
        assert_eq!(s3.get(1, 2), c(1.0));
        let s5 = OperatorMatrix::unity_lowering(5).unwrap();
        for n in 1..5 {
            assert_eq!(s5.get(n - 1, n), c(1.0));
        }
        assert_eq!(s5.nnz(), 4);
    }

    #[test]
    fn tensor_of_identities() {
        let space = HilbertSpace::new(vec![2, 2, 3]).unwrap();
        let ids: Vec<_> = space
            .dims()
            .iter()
            .map(|&d| OperatorMatrix::identity(HilbertSpace::single(d).unwrap()))
            .collect();
        let t = OperatorMatrix::tensor(&space, &ids).unwrap();
        assert_eq!(t.dim(), 12);
        assert_eq!(t.to_dense(), OperatorMatrix::identity(space).to_dense());
    }

    #[test]
    fn tensor_single_subsystem_action() {
        let space = HilbertSpace::new(vec![2, 2, 2]).unwrap();
        let a = OperatorMatrix::annihilation(2).unwrap();
        let op = OperatorMatrix::embed(&space, 0, &a).unwrap();
        let src = space.index_of(&[1, 0, 0]).unwrap();
        let out = op.apply_to_basis(src);
        let dst = space.index_of(&[0, 0, 0]).unwrap();
        for (i, z) in out.iter().enumerate() {
            let expected = if i == dst { 1.0 } else { 0.0 };
            assert_eq!(z.re, expected);
        }
    }

    #[test]
    fn tensor_rejects_wrong_order() {
        let space = HilbertSpace::new(vec![2, 3]).unwrap();
        let a3 = OperatorMatrix::annihilation(3).unwrap();
        let i2 = OperatorMatrix::identity(HilbertSpace::single(2).unwrap());
        assert!(matches!(
            OperatorMatrix::tensor(&space, &[a3.clone(), i2.clone()]),
            Err(Error::Shape(_))
        ));
        assert!(OperatorMatrix::tensor(&space, &[i2, a3]).is_ok());
        assert!(OperatorMatrix::tensor(&space, &[]).is_err());
    }

    #[test]
    fn kron_is_associative() {
        let a = OperatorMatrix::annihilation(2).unwrap();
        let b = OperatorMatrix::annihilation(3).unwrap().adjoint();
        let cc = OperatorMatrix::unity_lowering(2).unwrap();
        let left = a.kron(&b).kron(&cc);
        let right = a.kron(&b.kron(&cc));
        assert_eq!(left.dim(), 12);
        assert_eq!(left.to_dense(), right.to_dense());
        assert_eq!(left.space().dims(), &[2, 3, 2]);
    }

    #[test]
    fn space_mismatch_is_an_error() {
        let a2 = OperatorMatrix::annihilation(2).unwrap();
        let a3 = OperatorMatrix::annihilation(3).unwrap();
        assert!(a2.try_add(&a3).is_err());
        assert!(a2.try_mul(&a3).is_err());
    }

    #[test]
    fn hermiticity() {
        let a = OperatorMatrix::annihilation(4).unwrap();
        let x = &a + &a.adjoint();
        assert!(x.is_hermitian(1e-15));
        assert!(!a.is_hermitian(1e-3));
    }
}

// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of the transmon factor in the maser layout.
pub const TRANSMON: usize = 0;
/// Index of the auxiliary (low-Q) cavity factor in the maser layout.
pub const AUXILIARY: usize = 1;
/// Index of the reservoir (high-Q) cavity factor in the maser layout.
pub const RESERVOIR: usize = 2;

/// Ordered list of subsystem dimensions of a composite Hilbert space.
///
/// Basis states are enumerated with the last factor varying fastest, so a
/// maser state `|mu, M, N>` sits at `mu * (n_a * n_r) + M * n_r + N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HilbertSpace {
    dims: Vec<usize>,
}

impl HilbertSpace {
    /// A generic composite space. Every factor must have dimension at least 1.
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Shape("a Hilbert space needs at least one factor".into()));
        }
        if let Some(&dim) = dims.iter().find(|&&d| d == 0) {
            return Err(Error::InvalidDimension { dim, min: 1 });
        }
        Ok(Self { dims })
    }

    /// A single-factor space of dimension `dim`.
    pub fn single(dim: usize) -> Result<Self> {
        Self::new(vec![dim])
    }

    /// The (transmon, auxiliary, reservoir) layout. The auxiliary cavity may
    /// be a one-dimensional placeholder when it is decoupled.
    pub fn maser(transmon: usize, auxiliary: usize, reservoir: usize) -> Result<Self> {
        if transmon < 2 {
            return Err(Error::InvalidDimension { dim: transmon, min: 2 });
        }
        if auxiliary < 1 {
            return Err(Error::InvalidDimension { dim: auxiliary, min: 1 });
        }
        if reservoir < 2 {
            return Err(Error::InvalidDimension { dim: reservoir, min: 2 });
        }
        Self::new(vec![transmon, auxiliary, reservoir])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_subsystems(&self) -> usize {
        self.dims.len()
    }

    /// Total dimension, the product of the factor dimensions.
    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn dim(&self, index: usize) -> Result<usize> {
        self.dims.get(index).copied().ok_or(Error::SubsystemIndex {
            index,
            count: self.dims.len(),
        })
    }

    /// True for the three-factor layout used by the maser model.
    pub fn is_maser_layout(&self) -> bool {
        self.dims.len() == 3
    }

    /// Flat index of a product basis state.
    pub fn index_of(&self, labels: &[usize]) -> Result<usize> {
        if labels.len() != self.dims.len() {
            return Err(Error::Shape(format!(
                "expected {} labels, got {}",
                self.dims.len(),
                labels.len()
            )));
        }
        let mut idx = 0;
        for (&l, &d) in labels.iter().zip(&self.dims) {
            if l >= d {
                return Err(Error::Shape(format!("label {l} exceeds dimension {d}")));
            }
            idx = idx * d + l;
        }
        Ok(idx)
    }

    /// Inverse of [`HilbertSpace::index_of`].
    pub fn labels_of(&self, mut index: usize) -> Vec<usize> {
        let mut labels = vec![0; self.dims.len()];
        for (slot, &d) in labels.iter_mut().zip(&self.dims).rev() {
            *slot = index % d;
            index /= d;
        }
        labels
    }

    /// Space obtained by concatenating the factors of `self` and `other`.
    pub fn join(&self, other: &HilbertSpace) -> HilbertSpace {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        HilbertSpace { dims }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_is_product() {
        let s = HilbertSpace::maser(4, 2, 11).unwrap();
        assert_eq!(s.total(), 88);
        assert_eq!(s.dim(RESERVOIR).unwrap(), 11);
    }

    #[test]
    fn maser_layout_rejects_small_factors() {
        assert!(matches!(
            HilbertSpace::maser(1, 2, 3),
            Err(Error::InvalidDimension { dim: 1, min: 2 })
        ));
        assert!(HilbertSpace::maser(2, 1, 3).is_ok());
        assert!(HilbertSpace::maser(2, 0, 3).is_err());
        assert!(HilbertSpace::maser(2, 2, 1).is_err());
    }

    #[test]
    fn index_round_trip() {
        let s = HilbertSpace::maser(3, 2, 5).unwrap();
        for i in 0..s.total() {
            assert_eq!(s.index_of(&s.labels_of(i)).unwrap(), i);
        }
        assert_eq!(s.index_of(&[1, 0, 0]).unwrap(), 10);
        assert!(s.index_of(&[3, 0, 0]).is_err());
    }

    #[test]
    fn out_of_range_subsystem() {
        let s = HilbertSpace::maser(3, 2, 5).unwrap();
        assert!(matches!(s.dim(3), Err(Error::SubsystemIndex { index: 3, count: 3 })));
    }
}

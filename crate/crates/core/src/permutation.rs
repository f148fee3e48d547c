use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A permutation of `0..n`, read as "position `k` of the result takes index
/// `order[k]` of the source". Applied to a matrix it yields `PᵀAP` with
/// `(PᵀAP)[k][l] = A[order[k]][order[l]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// Validates that `order` is a bijection of `0..order.len()`.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = alloc::vec![false; n];
        for &i in &order {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation);
            }
            seen[i] = true;
        }
        Ok(Self(order))
    }

    /// Builds from 1-based indices.
    pub fn from_one_based(order: &[usize]) -> Result<Self> {
        if order.iter().any(|&i| i == 0) {
            return Err(Error::InvalidPermutation);
        }
        Self::new(order.iter().map(|&i| i - 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &i)| k == i)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0; self.0.len()];
        for (k, &i) in self.0.iter().enumerate() {
            inv[i] = k;
        }
        Self(inv)
    }

    /// `self` followed by `then`: applying the result equals applying `self`
    /// and then `then`.
    pub fn then(&self, then: &Permutation) -> Self {
        Self(then.0.iter().map(|&k| self.0[k]).collect())
    }

    /// Swap of two 0-based positions in an identity permutation of size `n`.
    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(a, b);
        p
    }
}

impl core::ops::Index<usize> for Permutation {
    type Output = usize;
    fn index(&self, k: usize) -> &usize {
        &self.0[k]
    }
}

//! Numerical kernels: Hermitian eigensolver, Perron pairs, constrained
//! quadratic maximization and planar convex hulls.

use alloc::vec::Vec;
use core::ops::Index;

use crate::error::{Error, Result};
use crate::qmatrix::CMatrix;

pub mod eigh;
pub mod hull;
pub mod perron;
pub mod quadratic;

pub use eigh::{eigh, sym_eigh, Eigh};
pub use hull::{convex_hull_2d, hausdorff, Hull2D, Point2};
pub use perron::perron_max;
pub use quadratic::{constrained_max_quadratic, sphere_max_quadratic, MaxOptions};

/// A real symmetric matrix, row-major, symmetric bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Dimension {
                expected: n * n,
                got: entries.len(),
            });
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(Error::InvalidArgument("matrix is not symmetric"));
                }
            }
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("matrix has a non-finite entry"));
        }
        Ok(Self { n, entries })
    }

    /// Evaluates `f` on the upper triangle and mirrors it.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut entries = alloc::vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                entries[i * n + j] = v;
                entries[j * n + i] = v;
            }
        }
        Self { n, entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| 0.0)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        let n = self.n;
        (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `vᵀ S v`.
    pub fn quad(&self, v: &[f64]) -> f64 {
        self.mul_vec(v).iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// Principal submatrix on `idx`.
    pub fn submatrix(&self, idx: &[usize]) -> SymMatrix {
        SymMatrix::from_fn(idx.len(), |a, b| self[(idx[a], idx[b])])
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, v| f64::max(m, libm::fabs(*v)))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|&v| v >= 0.0)
    }

    pub fn to_cmatrix(&self) -> CMatrix {
        CMatrix::from_real(self.n, |i, j| self[(i, j)])
    }

    /// Connected components of the support graph (off-diagonal nonzeros).
    pub fn support_components(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut label = alloc::vec![usize::MAX; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            let c = comps.len();
            label[s] = c;
            let mut stack = alloc::vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in 0..n {
                    if w != v && self[(v, w)] != 0.0 && label[w] == usize::MAX {
                        label[w] = c;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

impl Index<(usize, usize)> for SymMatrix {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.entries[i * self.n + j]
    }
}

pub(crate) fn norm2(v: &[f64]) -> f64 {
    libm::sqrt(v.iter().map(|x| x * x).sum())
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

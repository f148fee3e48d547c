//! Cyclic Jacobi for complex Hermitian matrices.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::SymMatrix;
use crate::error::{Error, Result};
use crate::qmatrix::CMatrix;

/// Accepted deviation from Hermitian symmetry, relative to `1 + max |m_ij|`.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Sweeps stop once the off-diagonal Frobenius mass drops below this
/// fraction of the full Frobenius norm.
pub const OFF_TOL: f64 = 1e-13;
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order and the matching orthonormal eigenvectors
/// stored as the columns of `vectors`.
#[derive(Debug, Clone)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl Eigh {
    /// Column `k` of the eigenvector matrix.
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        let m = self.vectors.m();
        (0..m).map(|i| self.vectors[(i, k)]).collect()
    }

    /// `V Λ V*`.
    pub fn reconstruct(&self) -> CMatrix {
        let m = self.vectors.m();
        CMatrix::from_fn(m, |i, j| {
            (0..m)
                .map(|k| self.vectors[(i, k)] * self.values[k] * self.vectors[(j, k)].conj())
                .sum()
        })
    }
}

fn off_mass(a: &CMatrix) -> f64 {
    let m = a.m();
    let mut s = 0.0;
    for i in 0..m {
        for j in 0..m {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    libm::sqrt(s)
}

/// Eigen-decomposition of a Hermitian matrix.
pub fn eigh(m: &CMatrix) -> Result<Eigh> {
    let n = m.m();
    if !m.is_hermitian(HERMITIAN_TOL * (1.0 + m.max_abs())) {
        return Err(Error::InvalidArgument("matrix is not Hermitian"));
    }
    // Symmetrize away the accepted rounding.
    let mut a = CMatrix::from_fn(n, |i, j| {
        if i == j {
            Complex64::new(m[(i, i)].re, 0.0)
        } else {
            (m[(i, j)] + m[(j, i)].conj()) * 0.5
        }
    });
    let mut v = CMatrix::identity(n);
    let scale = libm::sqrt(a.entries().iter().map(|z| z.norm_sqr()).sum());

    for _ in 0..MAX_SWEEPS {
        if off_mass(&a) <= OFF_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = CMatrix::from_fn(n, |i, k| v[(i, order[k])]);
    Ok(Eigh { values, vectors })
}

/// Annihilates `a[p][q]` by `U = diag(1, ē) · J(c, s)` on the `(p, q)` plane.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let e = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta >= 0.0 {
        1.0 / (theta + libm::sqrt(theta * theta + 1.0))
    } else {
        -1.0 / (-theta + libm::sqrt(theta * theta + 1.0))
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;
    let ec = e.conj();
    let upp = Complex64::new(c, 0.0);
    let upq = Complex64::new(s, 0.0);
    let uqp = ec * -s;
    let uqq = ec * c;
    let n = a.m();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * upp + akq * uqp;
        a[(k, q)] = akp * upq + akq * uqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
        a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * upp + vkq * uqp;
        v[(k, q)] = vkp * upq + vkq * uqq;
    }
}

/// Real symmetric case; eigenvectors are returned as real columns.
pub fn sym_eigh(s: &SymMatrix) -> (Vec<f64>, Vec<Vec<f64>>) {
    let e = eigh(&s.to_cmatrix()).expect("symmetric input is Hermitian");
    let n = s.n();
    let vecs = (0..n)
        .map(|k| {
            let col = e.vector(k);
            // A real symmetric problem keeps every rotation phase at ±1.
            col.iter().map(|z| z.re).collect()
        })
        .collect();
    (e.values, vecs)
}

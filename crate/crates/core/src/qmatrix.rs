//! Dense quaternionic and complex matrices.

use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::quaternion::Quaternion;

/// Relative zero threshold for entries: `|a| <= ZERO_REL * (1 + max |a_ij|)`.
pub const ZERO_REL: f64 = 1e-12;

/// Tolerance on `|‖x‖ − 1|` accepted by [`QMatrix::quad_form`].
pub const UNIT_TOL: f64 = 1e-10;

/// A dense `n×n` quaternionic matrix, row-major.
///
/// The structural flags are computed on construction and only set when the
/// entries verify them (entries below the zero threshold count as zero).
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    n: usize,
    entries: Vec<Quaternion>,
    upper_triangular: bool,
    real_diagonal: bool,
}

impl QMatrix {
    /// Builds from row-major entries, rejecting NaN and infinities.
    pub fn from_entries(n: usize, entries: Vec<Quaternion>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Dimension {
                expected: n * n,
                got: entries.len(),
            });
        }
        if let Some(k) = entries.iter().position(|q| !q.is_finite()) {
            return Err(Error::NonFinite {
                row: k / n.max(1),
                col: k % n.max(1),
            });
        }
        let mut m = Self {
            n,
            entries,
            upper_triangular: false,
            real_diagonal: false,
        };
        m.refresh_flags();
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<Quaternion>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: r.len(),
                });
            }
            entries.extend_from_slice(r);
        }
        Self::from_entries(n, entries)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self::from_entries(n, entries).expect("from_fn produced a non-finite entry")
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| Quaternion::ZERO)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { Quaternion::ONE } else { Quaternion::ZERO })
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(d: &[Quaternion]) -> Self {
        Self::from_fn(d.len(), |i, j| if i == j { d[i] } else { Quaternion::ZERO })
    }

    /// Real diagonal matrix.
    pub fn real_diagonal_matrix(d: &[f64]) -> Self {
        Self::from_fn(d.len(), |i, j| if i == j { Quaternion::real(d[i]) } else { Quaternion::ZERO })
    }

    fn refresh_flags(&mut self) {
        let thr = self.zero_threshold();
        let n = self.n;
        self.upper_triangular = (0..n).all(|i| (0..i).all(|j| self[(i, j)].norm() <= thr));
        self.real_diagonal = (0..n).all(|i| self[(i, i)].pure_norm() <= thr);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Quaternion]> {
        self.entries.chunks(self.n.max(1))
    }

    /// Upper triangular within the zero threshold.
    pub fn is_upper_triangular(&self) -> bool {
        self.upper_triangular
    }

    /// Diagonal entries have vanishing pure part.
    pub fn has_real_diagonal(&self) -> bool {
        self.real_diagonal
    }

    pub fn max_entry_norm(&self) -> f64 {
        self.entries.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    /// Scale-aware threshold below which an entry is treated as zero.
    pub fn zero_threshold(&self) -> f64 {
        ZERO_REL * (1.0 + self.max_entry_norm())
    }

    pub fn is_zero_entry(&self, i: usize, j: usize) -> bool {
        self[(i, j)].norm() <= self.zero_threshold()
    }

    /// Upper triangular with a zero diagonal.
    pub fn is_strictly_upper_triangular(&self) -> bool {
        self.upper_triangular && (0..self.n).all(|i| self.is_zero_entry(i, i))
    }

    pub fn diag(&self) -> Vec<Quaternion> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    /// Splits `D + N` with `D` the real parts of the diagonal and `N` the rest.
    pub fn split_real_diagonal(&self) -> (Vec<f64>, QMatrix) {
        let d: Vec<f64> = (0..self.n).map(|i| self[(i, i)].re()).collect();
        let off = QMatrix::from_fn(self.n, |i, j| {
            if i == j {
                self[(i, i)].pure()
            } else {
                self[(i, j)]
            }
        });
        (d, off)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> QMatrix {
        QMatrix::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix> {
        self.same_size(other)?;
        Ok(QMatrix::from_fn(self.n, |i, j| self[(i, j)] + other[(i, j)]))
    }

    pub fn scale(&self, s: f64) -> QMatrix {
        QMatrix::from_fn(self.n, |i, j| self[(i, j)].scale(s))
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        self.same_size(other)?;
        let n = self.n;
        let mut out = alloc::vec![Quaternion::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Quaternion::ZERO {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other[(k, j)];
                }
            }
        }
        QMatrix::from_entries(n, out)
    }

    fn same_size(&self, other: &QMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }

    /// `A^e` by repeated squaring where `e` is the first power of two `>= n`.
    /// Returns the matrix and `e`.
    fn power_at_least_n(&self) -> (QMatrix, u32) {
        let mut p = self.clone();
        let mut e = 1u32;
        while (e as usize) < self.n {
            p = p.mul(&p).expect("square matrix");
            e *= 2;
        }
        (p, e)
    }

    /// `true` iff every entry of `A^e` (`e >= n`) has norm at most
    /// `tol · (1 + max |a_ij|)^e`.
    pub fn is_nilpotent(&self, tol: f64) -> bool {
        if self.n == 0 {
            return true;
        }
        let (p, e) = self.power_at_least_n();
        let bound = tol * libm::pow(1.0 + self.max_entry_norm(), e as f64);
        p.entries.iter().all(|q| q.norm() <= bound)
    }

    /// Nilpotency checked on the complex adjoint `χ(A)` instead of `A`.
    pub fn is_nilpotent_via_chi(&self, tol: f64) -> bool {
        if self.n == 0 {
            return true;
        }
        let c = self.chi();
        let mut p = c.clone();
        let mut e = 1u32;
        while (e as usize) < self.n {
            p = p.mul(&p).expect("square matrix");
            e *= 2;
        }
        let bound = tol * libm::pow(1.0 + self.max_entry_norm(), e as f64);
        p.max_abs() <= bound
    }

    /// The complex adjoint `[[A1, A2], [−conj(A2), conj(A1)]]` of
    /// `A = A1 + A2 j`, with `A1 = w + x i` and `A2 = y + z i` per entry.
    pub fn chi(&self) -> CMatrix {
        let n = self.n;
        let mut c = CMatrix::zeros(2 * n);
        for i in 0..n {
            for j in 0..n {
                let q = self[(i, j)];
                let a1 = Complex64::new(q.w, q.x);
                let a2 = Complex64::new(q.y, q.z);
                c[(i, j)] = a1;
                c[(i, j + n)] = a2;
                c[(i + n, j)] = -a2.conj();
                c[(i + n, j + n)] = a1.conj();
            }
        }
        c
    }

    /// `PᵀAP` for the permutation `p`.
    pub fn permute(&self, p: &Permutation) -> Result<QMatrix> {
        if p.len() != self.n {
            return Err(Error::InvalidPermutation);
        }
        let o = p.as_slice();
        Ok(QMatrix::from_fn(self.n, |k, l| self[(o[k], o[l])]))
    }

    /// `x* A x`, summing `x_i* a_ij x_j` with products taken left to right.
    pub fn quad_form(&self, x: &[Quaternion]) -> Result<Quaternion> {
        if x.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                got: x.len(),
            });
        }
        let norm = libm::sqrt(x.iter().map(|q| q.norm_sqr()).sum());
        if libm::fabs(norm - 1.0) > UNIT_TOL {
            return Err(Error::NotUnit(norm));
        }
        Ok(self.quad_form_unchecked(x))
    }

    /// [`quad_form`](Self::quad_form) without the length and unit checks.
    #[inline]
    pub fn quad_form_unchecked(&self, x: &[Quaternion]) -> Quaternion {
        let n = self.n;
        let mut acc = Quaternion::ZERO;
        for i in 0..n {
            let xi = x[i].conj();
            let row = &self.entries[i * n..(i + 1) * n];
            for (j, a) in row.iter().enumerate() {
                if *a != Quaternion::ZERO {
                    acc += xi * *a * x[j];
                }
            }
        }
        acc
    }

    /// Nonzero entries as `(i, j, a_ij)`, for sparse evaluation of `x* A x`.
    pub fn nonzeros(&self) -> Vec<(usize, usize, Quaternion)> {
        let mut v = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let a = self[(i, j)];
                if a != Quaternion::ZERO {
                    v.push((i, j, a));
                }
            }
        }
        v
    }

    /// `U* A U`.
    pub fn unitary_conjugate(&self, u: &QMatrix) -> Result<QMatrix> {
        u.adjoint().mul(self)?.mul(u)
    }

    /// Largest entrywise deviation from another matrix of the same size.
    pub fn max_abs_diff(&self, other: &QMatrix) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (*a - *b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest pure-part norm over all entries.
    pub fn max_pure_norm(&self) -> f64 {
        self.entries.iter().map(|q| q.pure_norm()).fold(0.0, f64::max)
    }

    /// `|a_ij| + |a_ji|` off the diagonal, zero on it.
    pub fn symmetric_modulus(&self) -> crate::linalg::SymMatrix {
        let n = self.n;
        crate::linalg::SymMatrix::from_fn(n, |i, j| {
            if i == j {
                0.0
            } else {
                self[(i, j)].norm() + self[(j, i)].norm()
            }
        })
    }

}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        &self.entries[i * self.n + j]
    }
}

/// Block-diagonal assembly `A1 ⊕ … ⊕ Ak`.
pub fn direct_sum(blocks: &[QMatrix]) -> Result<QMatrix> {
    if blocks.is_empty() {
        return Err(Error::InvalidArgument("direct sum needs at least one block"));
    }
    let n: usize = blocks.iter().map(|b| b.n()).sum();
    let mut entries = alloc::vec![Quaternion::ZERO; n * n];
    let mut off = 0;
    for b in blocks {
        for i in 0..b.n() {
            for j in 0..b.n() {
                entries[(off + i) * n + off + j] = b[(i, j)];
            }
        }
        off += b.n();
    }
    QMatrix::from_entries(n, entries)
}

/// A dense `m×m` complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    m: usize,
    entries: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(m: usize) -> Self {
        Self {
            m,
            entries: alloc::vec![Complex64::new(0.0, 0.0); m * m],
        }
    }

    pub fn identity(m: usize) -> Self {
        let mut c = Self::zeros(m);
        for i in 0..m {
            c[(i, i)] = Complex64::new(1.0, 0.0);
        }
        c
    }

    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut c = Self::zeros(m);
        for i in 0..m {
            for j in 0..m {
                c[(i, j)] = f(i, j);
            }
        }
        c
    }

    pub fn from_real(m: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        Self::from_fn(m, |i, j| Complex64::new(f(i, j), 0.0))
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn mul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.m != other.m {
            return Err(Error::Dimension {
                expected: self.m,
                got: other.m,
            });
        }
        let m = self.m;
        let mut out = CMatrix::zeros(m);
        for i in 0..m {
            for k in 0..m {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..m {
                    out.entries[i * m + j] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.m, |i, j| self[(j, i)].conj())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (*a - *b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖M − M*‖_max <= tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        (0..self.m).all(|i| (0..=i).all(|j| (self[(i, j)] - self[(j, i)].conj()).norm() <= tol))
    }

    /// `½(e^{−iθ} M + e^{iθ} M*)`.
    pub fn rotated_hermitian_part(&self, theta: f64) -> CMatrix {
        let e = Complex64::new(libm::cos(theta), -libm::sin(theta));
        CMatrix::from_fn(self.m, |i, j| (e * self[(i, j)] + (e * self[(j, i)]).conj()) * 0.5)
    }

    /// `v* M v`.
    pub fn rayleigh(&self, v: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.m {
            let mut row = Complex64::new(0.0, 0.0);
            for j in 0..self.m {
                row += self[(i, j)] * v[j];
            }
            acc += v[i].conj() * row;
        }
        acc
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.m + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.m + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    const Z: Quaternion = Quaternion::ZERO;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// `[[0, 2j, 0], [0, 0, 0], [0, 0, 1]]`
    pub(crate) fn example_direct_sum() -> QMatrix {
        QMatrix::from_rows(&[
            vec![Z, Quaternion::J.scale(2.0), Z],
            vec![Z, Z, Z],
            vec![Z, Z, Quaternion::ONE],
        ])
        .unwrap()
    }

    #[test]
    fn chi_small_examples() {
        let a = QMatrix::from_rows(&[vec![Quaternion::J]]).unwrap();
        let x = a.chi();
        assert_eq!(x[(0, 0)], c(0.0, 0.0));
        assert_eq!(x[(0, 1)], c(1.0, 0.0));
        assert_eq!(x[(1, 0)], c(-1.0, 0.0));
        assert_eq!(x[(1, 1)], c(0.0, 0.0));
        assert_eq!(QMatrix::identity(1).chi(), CMatrix::identity(2));

        let b = QMatrix::from_rows(&[vec![Z, Quaternion::J.scale(2.0)], vec![Z, Z]]).unwrap();
        let xb = b.chi();
        let expected = CMatrix::from_fn(4, |i, j| if (i, j) == (0, 3) { c(2.0, 0.0) } else if (i, j) == (2, 1) { c(-2.0, 0.0) } else { c(0.0, 0.0) });
        assert_eq!(xb, expected);
    }

    #[test]
    fn chi_of_real_matrix_is_block_diagonal() {
        let a = QMatrix::from_fn(3, |i, j| Quaternion::real((i * 3 + j) as f64 - 4.0));
        let x = a.chi();
        for i in 0..3 {
            for j in 0..3 {
                let v = c((i * 3 + j) as f64 - 4.0, 0.0);
                assert_eq!(x[(i, j)], v);
                assert_eq!(x[(i + 3, j + 3)], v);
                assert_eq!(x[(i, j + 3)], c(0.0, 0.0));
                assert_eq!(x[(i + 3, j)], c(0.0, 0.0));
            }
        }
    }

    #[test]
    fn nilpotency_examples() {
        let s = QMatrix::from_rows(&[
            vec![Z, q(1.0, 2.0, 0.0, 0.0), q(0.0, 0.0, 3.0, -1.0)],
            vec![Z, Z, Quaternion::K],
            vec![Z, Z, Z],
        ])
        .unwrap();
        assert!(s.is_nilpotent(1e-10));
        assert!(s.is_nilpotent_via_chi(1e-10));
        assert!(!QMatrix::identity(2).is_nilpotent(1e-10));
        assert!(!QMatrix::identity(2).is_nilpotent_via_chi(1e-10));
        let e = example_direct_sum();
        assert!(!e.is_nilpotent(1e-10));
        assert!(!e.is_nilpotent_via_chi(1e-10));
    }

    #[test]
    fn direct_sum_examples() {
        let a1 = QMatrix::from_rows(&[vec![Z, Quaternion::J.scale(2.0)], vec![Z, Z]]).unwrap();
        let a2 = QMatrix::identity(1);
        assert_eq!(direct_sum(&[a1.clone(), a2]).unwrap(), example_direct_sum());
        assert_eq!(direct_sum(&[a1.clone()]).unwrap(), a1);
        assert_eq!(direct_sum(&[QMatrix::zeros(1), QMatrix::zeros(1)]).unwrap(), QMatrix::zeros(2));
        assert!(direct_sum(&[]).is_err());
    }

    #[test]
    fn permute_examples() {
        let a = q(0.5, -1.0, 2.0, 0.25);
        let m = QMatrix::from_rows(&[vec![Z, a], vec![Z, Z]]).unwrap();
        assert_eq!(m.permute(&Permutation::identity(2)).unwrap(), m);
        let swapped = m.permute(&Permutation::swap(2, 0, 1)).unwrap();
        assert_eq!(swapped, QMatrix::from_rows(&[vec![Z, Z], vec![a, Z]]).unwrap());
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        let e = example_direct_sum();
        assert_eq!(e.permute(&p).unwrap().permute(&p.inverse()).unwrap(), e);
        assert!(e.permute(&Permutation::identity(2)).is_err());
    }

    #[test]
    fn quad_form_examples() {
        let x = [q(0.6, 0.0, 0.0, 0.0), q(0.0, 0.0, 0.8, 0.0)];
        assert_eq!(QMatrix::zeros(2).quad_form(&x).unwrap(), Z);
        let one = QMatrix::identity(2).quad_form(&x).unwrap();
        assert!(one.approx_eq(Quaternion::ONE, 1e-15));
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let m = QMatrix::from_rows(&[vec![Z, Quaternion::ONE], vec![Z, Z]]).unwrap();
        let v = m.quad_form(&[Quaternion::real(s), Quaternion::real(s)]).unwrap();
        assert!(v.approx_eq(Quaternion::real(0.5), 1e-15));
        assert!(matches!(m.quad_form(&[Quaternion::ONE, Quaternion::ONE]), Err(Error::NotUnit(_))));
    }

    #[test]
    fn flags_follow_entries() {
        let e = example_direct_sum();
        assert!(e.is_upper_triangular());
        assert!(e.has_real_diagonal());
        assert!(!e.is_strictly_upper_triangular());
        let l = QMatrix::from_rows(&[vec![Z, Z], vec![Quaternion::ONE, Quaternion::I]]).unwrap();
        assert!(!l.is_upper_triangular());
        assert!(!l.has_real_diagonal());
        let bad = QMatrix::from_entries(1, vec![q(f64::NAN, 0.0, 0.0, 0.0)]);
        assert_eq!(bad, Err(Error::NonFinite { row: 0, col: 0 }));
    }
}

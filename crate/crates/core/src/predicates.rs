//! Decision procedures for 3×3 nilpotent matrices: circularity from the
//! graph, convexity from the product `a13* a12 a23`, the diagonal unitary
//! that makes a convex instance real, and the class along which the largest
//! modulus is attained.

use crate::error::{Error, Predicate, Result};
use crate::graph::{build_graph, is_cycle_free, triangularizing_permutation};
use crate::linalg::perron_max;
use crate::permutation::Permutation;
use crate::qmatrix::QMatrix;
use crate::quaternion::{Quaternion, UpperBildPoint};

#[derive(Debug, Clone, PartialEq)]
pub struct Classification3 {
    pub cycle_free: bool,
    /// `conj(a13) · a12 · a23` of the triangular form.
    pub triple_product: Quaternion,
    /// `W(A)` is a disk centred at the origin.
    pub circular: bool,
    pub convex: bool,
    /// `W(A)` coincides with the range of a real matrix obtained by a
    /// diagonal unitary similarity. Same truth value as `convex`.
    pub realifiable: bool,
    /// Permutation bringing the input to strictly upper triangular form.
    pub permutation: Permutation,
}

/// `|π_ℙ(t)| <= tol · (1 + |t|)`.
pub fn is_real_within(t: Quaternion, tol: f64) -> bool {
    t.pure_norm() <= tol * (1.0 + t.norm())
}

/// The strictly upper triangular form of a 3×3 nilpotent matrix and the
/// permutation producing it.
pub fn triangular_form3(a: &QMatrix, tol: f64) -> Result<(QMatrix, Permutation)> {
    if a.n() != 3 {
        return Err(Error::Precondition(Predicate::Square3));
    }
    if !a.is_nilpotent(tol) {
        return Err(Error::Precondition(Predicate::Nilpotent));
    }
    if a.is_strictly_upper_triangular() {
        return Ok((a.clone(), Permutation::identity(3)));
    }
    let p = triangularizing_permutation(a)?;
    Ok((a.permute(&p)?, p))
}

pub fn classify3(a: &QMatrix, tol: f64) -> Result<Classification3> {
    let (t, permutation) = triangular_form3(a, tol)?;
    let triple = t[(0, 2)].conj() * t[(0, 1)] * t[(1, 2)];
    let cycle_free = is_cycle_free(&build_graph(a));
    let circular = cycle_free;
    // A zero entry leaves a cycle-free graph, hence a disk.
    let convex = cycle_free || is_real_within(triple, tol);
    Ok(Classification3 {
        cycle_free,
        triple_product: triple,
        circular,
        convex,
        realifiable: convex,
        permutation,
    })
}

fn require_full_triangle(a: &QMatrix, tol: f64) -> Result<()> {
    if a.n() != 3 {
        return Err(Error::Precondition(Predicate::Square3));
    }
    if !a.is_strictly_upper_triangular() {
        return Err(Error::Precondition(Predicate::StrictlyUpperTriangular));
    }
    if !a.is_nilpotent(tol) {
        return Err(Error::Precondition(Predicate::Nilpotent));
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if a.is_zero_entry(i, j) {
            return Err(Error::ZeroEntry { row: i + 1, col: j + 1 });
        }
    }
    Ok(())
}

/// `U = diag(1, conj(z12), conj(z13))` with `z_ij = a_ij / |a_ij|`, and
/// `R = U* A U`, whose entries are `|a12|`, `|a13|` and `±|a23|` when the
/// triple product is real.
pub fn realifying_unitary(a: &QMatrix, tol: f64) -> Result<(QMatrix, QMatrix)> {
    require_full_triangle(a, tol)?;
    let triple = a[(0, 2)].conj() * a[(0, 1)] * a[(1, 2)];
    if !is_real_within(triple, tol) {
        return Err(Error::Precondition(Predicate::RealTripleProduct));
    }
    let z12 = a[(0, 1)].unit();
    let z13 = a[(0, 2)].unit();
    let u = QMatrix::diagonal(&[Quaternion::ONE, z12.conj(), z13.conj()]);
    let r = a.unitary_conjugate(&u)?;
    Ok((u, r))
}

/// Where the largest modulus of `W(A)` is attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxDirection {
    /// Unit quaternion `conj(w13) · w12 · w23`, `w_ij = a_ij / |a_ij|`.
    pub class: Quaternion,
    /// `max Σ_{i<j} β_i β_j |a_ij|` over nonnegative unit `β`.
    pub modulus: f64,
}

impl MaxDirection {
    /// Upper-Bild representative of `modulus · class`.
    pub fn point(&self) -> UpperBildPoint {
        self.class.scale(self.modulus).to_upper_bild()
    }
}

pub fn max_direction_class(a: &QMatrix, tol: f64) -> Result<MaxDirection> {
    require_full_triangle(a, tol)?;
    let w = |i: usize, j: usize| a[(i, j)].unit();
    let class = w(0, 2).conj() * w(0, 1) * w(1, 2);
    let modulus = 0.5 * perron_max(&a.symmetric_modulus()).0;
    Ok(MaxDirection { class, modulus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    const Z: Quaternion = Quaternion::ZERO;
    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;
    const ONE: Quaternion = Quaternion::ONE;

    fn tri(a12: Quaternion, a13: Quaternion, a23: Quaternion) -> QMatrix {
        QMatrix::from_rows(&[vec![Z, a12, a13], vec![Z, Z, a23], vec![Z, Z, Z]]).unwrap()
    }

    #[test]
    fn classify_examples() {
        let c = classify3(&tri(I, J, K), 1e-10).unwrap();
        assert!(c.triple_product.approx_eq(Quaternion::real(-1.0), 1e-15));
        assert!(c.convex && !c.circular && !c.cycle_free);

        let c = classify3(&tri(I, Z, K), 1e-10).unwrap();
        assert!(c.cycle_free && c.circular && c.convex);

        let c = classify3(&tri(I, ONE, J), 1e-10).unwrap();
        assert!(c.triple_product.approx_eq(K, 1e-15));
        assert!(!c.convex && !c.circular);
    }

    #[test]
    fn classify_rejects() {
        assert_eq!(classify3(&QMatrix::zeros(2), 1e-10), Err(Error::Precondition(Predicate::Square3)));
        assert_eq!(classify3(&QMatrix::identity(3), 1e-10), Err(Error::Precondition(Predicate::Nilpotent)));
    }

    #[test]
    fn classify_is_permutation_invariant() {
        let a = tri(I, ONE, J);
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        let b = a.permute(&p).unwrap();
        let (ca, cb) = (classify3(&a, 1e-10).unwrap(), classify3(&b, 1e-10).unwrap());
        assert_eq!((ca.convex, ca.circular), (cb.convex, cb.circular));
        assert!(crate::quaternion::similar(ca.triple_product, cb.triple_product, 1e-12));
    }

    #[test]
    fn realify_examples() {
        let (u, r) = realifying_unitary(&tri(I, J, K), 1e-10).unwrap();
        assert!(r.max_pure_norm() <= 1e-10);
        assert!(u.diag()[1].approx_eq(-I, 1e-15) && u.diag()[2].approx_eq(-J, 1e-15));
        assert!(r[(0, 1)].approx_eq(ONE, 1e-14) && r[(0, 2)].approx_eq(ONE, 1e-14));
        assert!((r[(1, 2)].norm() - 1.0).abs() < 1e-14);

        let real = tri(Quaternion::real(2.0), ONE, Quaternion::real(3.0));
        let (u, r) = realifying_unitary(&real, 1e-10).unwrap();
        assert_eq!(u, QMatrix::identity(3));
        assert!(r.max_abs_diff(&real) < 1e-15);

        let (_, r) = realifying_unitary(&tri(I.scale(2.0), I, ONE), 1e-10).unwrap();
        assert!(r.max_pure_norm() <= 1e-10);

        assert_eq!(realifying_unitary(&tri(I, Z, K), 1e-10), Err(Error::ZeroEntry { row: 1, col: 3 }));
        assert_eq!(
            realifying_unitary(&tri(I, ONE, J), 1e-10),
            Err(Error::Precondition(Predicate::RealTripleProduct))
        );
    }

    #[test]
    fn max_direction_examples() {
        let m = max_direction_class(&tri(I, J, K), 1e-10).unwrap();
        assert!(m.class.approx_eq(Quaternion::real(-1.0), 1e-15));
        // Unit weights on a triangle: λ_max = 2.
        assert!((m.modulus - 1.0).abs() < 1e-12);
        assert!(max_direction_class(&tri(ONE, ONE, ONE), 1e-10).unwrap().class.approx_eq(ONE, 1e-15));
        assert!(max_direction_class(&tri(I, ONE, J), 1e-10).unwrap().class.approx_eq(K, 1e-15));
    }
}

//! Hamilton quaternions and their similarity classes.

use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Default absolute tolerance for algebraic identities on unit-scale operands.
pub const EPS: f64 = 1e-12;

/// A quaternion `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub const fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    #[inline]
    pub const fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    /// Real part.
    #[inline]
    pub fn re(self) -> f64 {
        self.w
    }

    /// Pure (imaginary) part as a quaternion with zero real part.
    #[inline]
    pub fn pure(self) -> Self {
        Self::new(0.0, self.x, self.y, self.z)
    }

    /// Norm of the pure part.
    #[inline]
    pub fn pure_norm(self) -> f64 {
        libm::sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// `self / |self|`, or `1` for the zero quaternion.
    pub fn unit(self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            Self::ONE
        } else {
            self.scale(1.0 / n)
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        let n2 = self.norm_sqr();
        (n2 != 0.0).then(|| self.conj().scale(1.0 / n2))
    }

    /// Fieldwise comparison within `tol`.
    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        libm::fabs(self.w - other.w) <= tol
            && libm::fabs(self.x - other.x) <= tol
            && libm::fabs(self.y - other.y) <= tol
            && libm::fabs(self.z - other.z) <= tol
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Canonical complex representative `(re, |pure|)` of the class `[self]`.
    #[inline]
    pub fn to_upper_bild(self) -> UpperBildPoint {
        UpperBildPoint {
            re: self.w,
            im: self.pure_norm(),
        }
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product (`i² = j² = k² = ijk = −1`).
impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let a = self;
        Self::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Self::real(w)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.w, self.x, self.y, self.z)
    }
}

/// Hamilton product as a free function.
#[inline]
pub fn mul(a: Quaternion, b: Quaternion) -> Quaternion {
    a * b
}

/// Two quaternions are similar (`s* b s = a` for a unit `s`) iff their real
/// parts and pure-part norms agree.
pub fn similar(a: Quaternion, b: Quaternion, tol: f64) -> bool {
    libm::fabs(a.re() - b.re()) <= tol && libm::fabs(a.pure_norm() - b.pure_norm()) <= tol
}

/// See [`Quaternion::to_upper_bild`].
#[inline]
pub fn to_upper_bild(q: Quaternion) -> UpperBildPoint {
    q.to_upper_bild()
}

/// A point of the closed upper half plane standing for a similarity class.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct UpperBildPoint {
    pub re: f64,
    /// Always `>= 0`.
    pub im: f64,
}

impl UpperBildPoint {
    pub fn new(re: f64, im: f64) -> Self {
        debug_assert!(im >= 0.0);
        Self { re, im }
    }

    pub fn modulus(self) -> f64 {
        libm::hypot(self.re, self.im)
    }

    /// The complex number `re + im i` as a quaternion.
    pub fn to_quaternion(self) -> Quaternion {
        Quaternion::new(self.re, self.im, 0.0, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;

    #[test]
    fn basis_products() {
        assert_eq!(I * J, K);
        assert_eq!(J * K, I);
        assert_eq!(K * I, J);
        assert_eq!(J * I, -K);
        for u in [I, J, K] {
            assert_eq!(u * u, Quaternion::real(-1.0));
        }
        assert_eq!(I * J * K, Quaternion::real(-1.0));
    }

    #[test]
    fn identity_and_example_product() {
        let q = Quaternion::new(0.3, -1.2, 2.5, 0.7);
        assert_eq!(q * Quaternion::ONE, q);
        assert_eq!(Quaternion::ONE * q, q);
        assert_eq!(-J * (I * K), Quaternion::real(-1.0));
    }

    #[test]
    fn similarity_examples() {
        assert!(similar(I, J, EPS));
        let a = Quaternion::new(1.0, 1.0, 0.0, 0.0);
        assert!(similar(a, a.conj(), EPS));
        assert!(!similar(a, Quaternion::new(1.0, 2.0, 0.0, 0.0), EPS));
        assert!(!similar(a, Quaternion::new(1.1, 1.0, 0.0, 0.0), 0.05));
    }

    #[test]
    fn upper_bild_examples() {
        assert_eq!(to_upper_bild(Quaternion::real(3.0)), UpperBildPoint::new(3.0, 0.0));
        assert_eq!(to_upper_bild(Quaternion::new(1.0, 0.0, 2.0, 0.0)), UpperBildPoint::new(1.0, 2.0));
        let p = to_upper_bild(Quaternion::new(1.0, 1.0, 1.0, 1.0));
        assert_eq!(p.re, 1.0);
        assert!((p.im - libm::sqrt(3.0)).abs() < EPS);
    }

    #[test]
    fn norm_and_inverse() {
        let q = Quaternion::new(1.0, -2.0, 2.0, 4.0);
        assert_eq!(q.norm(), 5.0);
        let inv = q.inverse().unwrap();
        assert!((q * inv).approx_eq(Quaternion::ONE, EPS));
        assert!(Quaternion::ZERO.inverse().is_none());
        assert_eq!(Quaternion::ZERO.unit(), Quaternion::ONE);
    }

    #[test]
    fn conj_times_self_is_real_norm() {
        let q = Quaternion::new(0.5, -0.25, 3.0, -1.5);
        let p = q.conj() * q;
        assert!(p.approx_eq(Quaternion::real(q.norm_sqr()), EPS * 16.0));
    }
}

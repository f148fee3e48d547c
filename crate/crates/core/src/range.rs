//! Numerical ranges three ways: closed-form disks and disk unions, Monte
//! Carlo clouds of `x* A x`, and support-function boundaries of complex
//! matrices.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Predicate, Result};
use crate::graph::{build_graph, is_cycle_free, is_tree};
use crate::linalg::hull::{convex_hull_2d, Hull2D, Point2};
use crate::linalg::quadratic::{constrained_max_quadratic, constrained_max_quadratic_from};
use crate::linalg::{eigh, perron_max, sphere_max_quadratic, MaxOptions, SymMatrix};
use crate::qmatrix::{CMatrix, QMatrix};
use crate::quaternion::{Quaternion, UpperBildPoint};
use crate::sampling::{derive_seed, real_unit_vector, rng_from_seed, uniform_index, SphereSampler};

/// Agreement required between the Perron radius and direct maximization.
pub const CROSS_CHECK_TOL: f64 = 1e-8;
pub const DEFAULT_GRID: usize = 512;
pub const ENVELOPE_ANGLES: usize = 2048;
const REFINE_STEPS: usize = 48;
/// Grid gaps beyond this (relative) are far outside any interpolation error
/// and are reported without refinement.
const REFINE_BAND: f64 = 1e-3;

/// A family of real-centred disks `{(d_k, r_k)}` on an ascending grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskUnion {
    centers: Vec<f64>,
    radii: Vec<f64>,
    d_lo: f64,
    d_hi: f64,
    source: Option<RadiusSource>,
}

/// What is needed to evaluate `r(d)` off the grid.
#[derive(Debug, Clone, PartialEq)]
struct RadiusSource {
    s: SymMatrix,
    d: Vec<f64>,
    opts: MaxOptions,
    scale: f64,
}

impl DiskUnion {
    pub fn new(centers: Vec<f64>, radii: Vec<f64>) -> Result<Self> {
        if centers.is_empty() || centers.len() != radii.len() {
            return Err(Error::InvalidArgument("centers and radii must be nonempty and of equal length"));
        }
        if radii.iter().any(|r| !(*r >= 0.0)) || centers.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidArgument("radii must be nonnegative and centers strictly ascending"));
        }
        let d_lo = centers[0];
        let d_hi = *centers.last().unwrap();
        Ok(Self {
            centers,
            radii,
            d_lo,
            d_hi,
            source: None,
        })
    }

    /// A single disk.
    pub fn disk(center: f64, radius: f64) -> Self {
        Self::new(alloc::vec![center], alloc::vec![radius]).expect("valid disk")
    }

    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn d_lo(&self) -> f64 {
        self.d_lo
    }

    pub fn d_hi(&self) -> f64 {
        self.d_hi
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn max_radius(&self) -> f64 {
        self.radii.iter().copied().fold(0.0, f64::max)
    }

    /// Scales every radius, e.g. to build a tampered control.
    pub fn with_scaled_radii(&self, factor: f64) -> Self {
        let mut u = self.clone();
        u.radii.iter_mut().for_each(|r| *r *= factor);
        if let Some(src) = u.source.as_mut() {
            src.scale *= factor;
        }
        u
    }

    /// `[min (d − r(d)), max (d + r(d))]` over the grid.
    pub fn real_extent(&self) -> (f64, f64) {
        real_extent(self)
    }

    /// `r(d)` at any level in `[d_lo, d_hi]`, when the union was built from a
    /// matrix.
    pub fn radius_at(&self, level: f64) -> Option<f64> {
        let src = self.source.as_ref()?;
        constrained_max_quadratic(&src.s, &src.d, level, &src.opts)
            .ok()
            .map(|(r, _)| src.scale * r.max(0.0))
    }

    /// Largest `|r_{k+1} − r_k|`.
    pub fn max_adjacent_jump(&self) -> f64 {
        self.radii.windows(2).map(|w| libm::fabs(w[1] - w[0])).fold(0.0, f64::max)
    }

    /// Distance from `(x, y)` to the union (zero inside).
    ///
    /// First against the region swept by disks with centres and radii
    /// interpolated linearly between grid neighbours; the gap `|p − c| − r`
    /// is convex on each segment, so only the two segments around the best
    /// grid disk are searched. Points still outside are re-measured with
    /// exact radii between the neighbouring grid levels when the union was
    /// built from a matrix.
    pub fn distance(&self, x: f64, y: f64) -> f64 {
        let gap = |c: f64, r: f64| libm::hypot(x - c, y) - r;
        let m = self.centers.len();
        if m > 1 {
            // Most points sit inside the disk centred right below them.
            let t = (x - self.d_lo) / (self.d_hi - self.d_lo) * (m - 1) as f64;
            let k = libm::round(t.clamp(0.0, (m - 1) as f64)) as usize;
            if gap(self.centers[k], self.radii[k]) <= 0.0 {
                return 0.0;
            }
        }
        let mut k_best = 0;
        let mut best = f64::INFINITY;
        for k in 0..m {
            let g = gap(self.centers[k], self.radii[k]);
            if g < best {
                best = g;
                k_best = k;
            }
        }
        if best <= 0.0 {
            return 0.0;
        }
        for k in [k_best.checked_sub(1), Some(k_best)].into_iter().flatten() {
            if k + 1 >= m {
                continue;
            }
            let (c0, c1) = (self.centers[k], self.centers[k + 1]);
            let (r0, r1) = (self.radii[k], self.radii[k + 1]);
            let at = |t: f64| gap(c0 + t * (c1 - c0), r0 + t * (r1 - r0));
            let (mut a, mut b) = (0.0, 1.0);
            for _ in 0..80 {
                let m1 = a + (b - a) / 3.0;
                let m2 = b - (b - a) / 3.0;
                if at(m1) < at(m2) {
                    b = m2;
                } else {
                    a = m1;
                }
            }
            best = best.min(at(0.5 * (a + b)));
        }
        if best > 0.0 && best <= REFINE_BAND * (1.0 + self.max_radius()) && self.source.is_some() {
            // The grid polygon lies inside the true union; bracket the best
            // level by its grid neighbours and search with exact radii. The
            // gap is convex in d because r is concave.
            let lo = self.centers[k_best.saturating_sub(1)];
            let hi = self.centers[(k_best + 1).min(m - 1)];
            let exact = |lev: f64| self.radius_at(lev).map_or(f64::INFINITY, |r| gap(lev, r));
            let (mut a, mut b) = (lo, hi);
            let g = 0.5 * (libm::sqrt(5.0) - 1.0);
            let mut x1 = b - g * (b - a);
            let mut x2 = a + g * (b - a);
            let (mut f1, mut f2) = (exact(x1), exact(x2));
            for _ in 0..REFINE_STEPS {
                if f1 < f2 {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - g * (b - a);
                    f1 = exact(x1);
                } else {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + g * (b - a);
                    f2 = exact(x2);
                }
            }
            best = best.min(f1.min(f2));
        }
        best.max(0.0)
    }

    pub fn contains(&self, x: f64, y: f64, slack: f64) -> bool {
        self.distance(x, y) <= slack
    }

    /// Boundary of the union seen from the midpoint of the real extent, at
    /// `angle_count` uniform angles.
    pub fn envelope(&self, angle_count: usize) -> Envelope {
        let (a, b) = self.real_extent();
        let origin = 0.5 * (a + b);
        let mut angles = Vec::with_capacity(angle_count);
        let mut rho = Vec::with_capacity(angle_count);
        for k in 0..angle_count {
            let phi = TAU * k as f64 / angle_count as f64;
            let c = libm::cos(phi);
            let mut exit: f64 = 0.0;
            for (d, r) in self.centers.iter().zip(&self.radii) {
                // |origin + t e^{iφ} − d|² = r² → t² + 2 t c (origin − d) + (origin − d)² − r² = 0
                let o = origin - d;
                let half_b = c * o;
                let disc = half_b * half_b - (o * o - r * r);
                if disc >= 0.0 {
                    exit = exit.max(-half_b + libm::sqrt(disc));
                }
            }
            angles.push(phi);
            rho.push(exit);
        }
        Envelope { origin, angles, rho }
    }
}

/// Polar description of a star-shaped boundary around a real origin.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    pub origin: f64,
    pub angles: Vec<f64>,
    pub rho: Vec<f64>,
}

impl Envelope {
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.angles
            .iter()
            .zip(&self.rho)
            .map(|(phi, r)| (self.origin + r * libm::cos(*phi), r * libm::sin(*phi)))
            .collect()
    }

    /// Points in the closed upper half plane.
    pub fn upper_points(&self) -> Vec<(f64, f64)> {
        self.points().into_iter().filter(|p| p.1 >= 0.0).collect()
    }
}

/// See [`DiskUnion::real_extent`].
pub fn real_extent(u: &DiskUnion) -> (f64, f64) {
    let lo = u.centers.iter().zip(&u.radii).map(|(d, r)| d - r).fold(f64::INFINITY, f64::min);
    let hi = u.centers.iter().zip(&u.radii).map(|(d, r)| d + r).fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

/// The disk `W(A)` of a nilpotent tree matrix: centred at the origin with
/// radius `½ λ_max(S)`, `S_ij = |a_ij| + |a_ji|`.
pub fn tree_disk(a: &QMatrix, tol: f64) -> Result<DiskUnion> {
    let g = build_graph(a);
    if !is_tree(&g) {
        return Err(Error::Precondition(Predicate::Tree));
    }
    if !a.is_nilpotent(tol) {
        return Err(Error::Precondition(Predicate::Nilpotent));
    }
    let s = a.symmetric_modulus();
    let r = 0.5 * perron_max(&s).0;
    let (direct, _) = sphere_max_quadratic(&s, &MaxOptions::default());
    if libm::fabs(direct - r) > CROSS_CHECK_TOL * (1.0 + r) {
        return Err(Error::Internal("Perron radius disagrees with direct maximization"));
    }
    Ok(DiskUnion::disk(0.0, r))
}

/// The disk `W(A)` of a nilpotent cycle-free matrix: the largest of the
/// disks of its tree blocks.
pub fn cyclefree_disk(a: &QMatrix, tol: f64) -> Result<DiskUnion> {
    let g = build_graph(a);
    if !is_cycle_free(&g) {
        return Err(Error::Precondition(Predicate::CycleFree));
    }
    if !a.is_nilpotent(tol) {
        return Err(Error::Precondition(Predicate::Nilpotent));
    }
    let mut r: f64 = 0.0;
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let block = QMatrix::from_fn(comp.len(), |i, j| a[(comp[i], comp[j])]);
        r = r.max(tree_disk(&block, tol)?.max_radius());
    }
    Ok(DiskUnion::disk(0.0, r))
}

/// `W(D + N) = ⋃_d 𝔻(d, r(d))` for a real diagonal `D` and a nilpotent tree
/// `N`, sampled on `grid_size` uniform levels of `[min d_i, max d_i]`.
pub fn disk_union(d: &[f64], n: &QMatrix, grid_size: usize, tol: f64) -> Result<DiskUnion> {
    disk_union_with(d, n, grid_size, tol, &MaxOptions::default())
}

pub fn disk_union_with(d: &[f64], n: &QMatrix, grid_size: usize, tol: f64, opts: &MaxOptions) -> Result<DiskUnion> {
    if d.len() != n.n() {
        return Err(Error::Dimension {
            expected: n.n(),
            got: d.len(),
        });
    }
    if d.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("diagonal has a non-finite entry"));
    }
    if grid_size < 2 {
        return Err(Error::InvalidArgument("grid size must be at least 2"));
    }
    let g = build_graph(n);
    if !is_tree(&g) {
        return Err(Error::Precondition(Predicate::Tree));
    }
    if !n.is_nilpotent(tol) {
        return Err(Error::Precondition(Predicate::Nilpotent));
    }
    let s = n.symmetric_modulus();
    let lo = d.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = d.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi - lo <= 1e-12 * (1.0 + libm::fabs(lo).max(libm::fabs(hi))) {
        // W(αI + N) = α + W(N).
        return Ok(DiskUnion::disk(lo, 0.5 * perron_max(&s).0));
    }
    let mut centers = Vec::with_capacity(grid_size);
    let mut radii = Vec::with_capacity(grid_size);
    let mut warm: Option<Vec<f64>> = None;
    for k in 0..grid_size {
        let level = if k + 1 == grid_size {
            hi
        } else {
            lo + (hi - lo) * k as f64 / (grid_size - 1) as f64
        };
        let (r, beta) = constrained_max_quadratic_from(&s, d, level, opts, warm.as_deref())?;
        centers.push(level);
        radii.push(r.max(0.0));
        warm = Some(beta);
    }
    let mut u = DiskUnion::new(centers, radii)?;
    u.source = Some(RadiusSource {
        s,
        d: d.to_vec(),
        opts: *opts,
        scale: 1.0,
    });
    Ok(u)
}

/// [`disk_union`] for `A = D + N` given as one matrix with a real diagonal.
pub fn disk_union_of(a: &QMatrix, grid_size: usize, tol: f64) -> Result<DiskUnion> {
    if !a.has_real_diagonal() {
        return Err(Error::Precondition(Predicate::RealDiagonal));
    }
    let (d, n) = a.split_real_diagonal();
    let n = QMatrix::from_fn(n.n(), |i, j| if i == j { Quaternion::ZERO } else { n[(i, j)] });
    disk_union(&d, &n, grid_size, tol)
}

/// FNV-1a over the bit patterns of the entries.
pub fn matrix_hash(a: &QMatrix) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |v: u64| {
        for b in v.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    eat(a.n() as u64);
    for q in a.entries() {
        for v in q.to_array() {
            eat(v.to_bits());
        }
    }
    h
}

/// Sampled upper-Bild representatives of `W(A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BildCloud {
    pub points: Vec<UpperBildPoint>,
    pub matrix_hash: u64,
    pub count: usize,
    pub seed: u64,
}

impl BildCloud {
    pub fn max_modulus(&self) -> f64 {
        self.points.iter().map(|p| p.modulus()).fold(0.0, f64::max)
    }

    pub fn as_points2(&self) -> Vec<Point2> {
        self.points.iter().map(|p| Point2::new(p.re, p.im)).collect()
    }

    pub fn hull(&self) -> Hull2D {
        convex_hull_2d(&self.as_points2())
    }

    /// Hull of the cloud together with its mirror image, i.e. of the full
    /// sampled Bild `W(A) ∩ ℂ`.
    pub fn symmetric_hull(&self) -> Hull2D {
        let mut pts = self.as_points2();
        pts.extend(self.points.iter().map(|p| Point2::new(p.re, -p.im)));
        convex_hull_2d(&pts)
    }
}

/// Calls `f` on `x* A x` for `count` seeded uniform unit vectors `x`.
pub fn for_each_sample(a: &QMatrix, count: usize, seed: u64, mut f: impl FnMut(Quaternion)) {
    let n = a.n();
    let nz = a.nonzeros();
    let mut sampler = SphereSampler::new(n.max(1), seed);
    let mut x = alloc::vec![Quaternion::ZERO; n.max(1)];
    for _ in 0..count {
        sampler.fill(&mut x);
        let mut acc = Quaternion::ZERO;
        for &(i, j, aij) in &nz {
            acc += x[i].conj() * aij * x[j];
        }
        f(acc);
    }
}

/// `count` sampled values `x* A x`.
pub fn sample_range(a: &QMatrix, count: usize, seed: u64) -> Vec<Quaternion> {
    let mut out = Vec::with_capacity(count);
    for_each_sample(a, count, seed, |q| out.push(q));
    out
}

pub fn sample_bild(a: &QMatrix, count: usize, seed: u64) -> BildCloud {
    let mut points = Vec::with_capacity(count);
    for_each_sample(a, count, seed, |q| points.push(q.to_upper_bild()));
    BildCloud {
        points,
        matrix_hash: matrix_hash(a),
        count,
        seed,
    }
}

/// Random elements `Σ α_i² a_i` of the inter-convex hull of finite clouds.
#[derive(Debug, Clone, PartialEq)]
pub struct IconvCloud {
    pub points: Vec<Quaternion>,
}

impl IconvCloud {
    pub fn bild(&self) -> Vec<UpperBildPoint> {
        self.points.iter().map(|q| q.to_upper_bild()).collect()
    }

    pub fn hull(&self) -> Hull2D {
        convex_hull_2d(&self.points.iter().map(|q| q.to_upper_bild()).map(|p| Point2::new(p.re, p.im)).collect::<Vec<_>>())
    }
}

/// `count` combinations `Σ α_i² a_i` with `α` uniform on the unit sphere of
/// `ℝᵏ` and `a_i` drawn uniformly from cloud `i`.
pub fn iconv_clouds(clouds: &[Vec<Quaternion>], count: usize, seed: u64) -> Result<IconvCloud> {
    if clouds.is_empty() || clouds.iter().any(|c| c.is_empty()) {
        return Err(Error::InvalidArgument("iconv needs at least one nonempty cloud"));
    }
    let k = clouds.len();
    let mut rng = rng_from_seed(seed);
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        let alpha = real_unit_vector(&mut rng, k);
        let mut acc = Quaternion::ZERO;
        for (c, a) in clouds.iter().zip(&alpha) {
            acc += c[uniform_index(&mut rng, c.len())].scale(a * a);
        }
        points.push(acc);
    }
    Ok(IconvCloud { points })
}

/// Support function and boundary of the complex numerical range of `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportBoundary {
    pub angles: Vec<f64>,
    /// `h(θ) = λ_max(½(e^{−iθ}M + e^{iθ}M*))`.
    pub support: Vec<f64>,
    /// Rayleigh quotient of the top eigenvector at each angle.
    pub points: Vec<Complex64>,
}

impl SupportBoundary {
    /// `(max h − min h) / mean |h|`.
    pub fn support_spread(&self) -> f64 {
        let max = self.support.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = self.support.iter().copied().fold(f64::INFINITY, f64::min);
        let mean = self.support.iter().map(|h| libm::fabs(*h)).sum::<f64>() / self.support.len() as f64;
        if mean == 0.0 {
            if max == min {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (max - min) / mean
        }
    }

    /// `min_k h(θ_k) + h(θ_k + π)` for even angle counts; nonnegative for
    /// any compact convex set.
    pub fn min_width(&self) -> f64 {
        let m = self.support.len();
        if m % 2 != 0 {
            return f64::NAN;
        }
        (0..m / 2).map(|k| self.support[k] + self.support[k + m / 2]).fold(f64::INFINITY, f64::min)
    }

    pub fn hull(&self) -> Hull2D {
        convex_hull_2d(&self.points.iter().map(|z| Point2::new(z.re, z.im)).collect::<Vec<_>>())
    }

    /// Boundary points reflected into the closed upper half plane.
    pub fn upper_points(&self) -> Vec<(f64, f64)> {
        self.points.iter().map(|z| (z.re, libm::fabs(z.im))).collect()
    }
}

pub fn support_boundary(m: &CMatrix, angle_count: usize) -> Result<SupportBoundary> {
    if angle_count < 8 {
        return Err(Error::InvalidArgument("support boundary needs at least 8 angles"));
    }
    let mut out = SupportBoundary {
        angles: Vec::with_capacity(angle_count),
        support: Vec::with_capacity(angle_count),
        points: Vec::with_capacity(angle_count),
    };
    for k in 0..angle_count {
        let theta = TAU * k as f64 / angle_count as f64;
        let e = eigh(&m.rotated_hermitian_part(theta))?;
        let top = e.values.len() - 1;
        let v = e.vector(top);
        out.angles.push(theta);
        out.support.push(e.values[top]);
        out.points.push(m.rayleigh(&v));
    }
    Ok(out)
}

/// Outcome of a circularity test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circularity {
    pub is_circular: bool,
    /// Real part of the fitted centre.
    pub center: f64,
    /// Imaginary part of the fitted centre; zero for clouds, whose fit keeps
    /// the centre on the real axis.
    pub center_im: f64,
    pub radius: f64,
    pub deviation: f64,
}

pub const BOUNDARY_CIRCULAR_TOL: f64 = 1e-4;
pub const CLOUD_CIRCULAR_TOL: f64 = 5e-3;
pub const CLOUD_MIN_POINTS: usize = 1_000;

pub trait CircularityScore {
    fn circularity_score(&self) -> Result<Circularity>;
}

impl CircularityScore for SupportBoundary {
    /// Centre = mean boundary point, radius = mean distance to it. The
    /// deviation is the larger of the relative spread of those distances and
    /// the relative misfit of `h(θ)` against the disk support
    /// `Re(e^{−iθ} c) + r`; the second term catches sets such as segments
    /// whose few exposed points happen to be equidistant from their mean.
    fn circularity_score(&self) -> Result<Circularity> {
        let m = self.points.len();
        if m < 8 {
            return Err(Error::TooFewPoints { got: m, min: 8 });
        }
        let c: Complex64 = self.points.iter().sum::<Complex64>() / m as f64;
        let dist: Vec<f64> = self.points.iter().map(|z| (z - c).norm()).collect();
        let radius = dist.iter().sum::<f64>() / m as f64;
        let spread = dist.iter().copied().fold(f64::NEG_INFINITY, f64::max) - dist.iter().copied().fold(f64::INFINITY, f64::min);
        let misfit = self
            .angles
            .iter()
            .zip(&self.support)
            .map(|(t, h)| libm::fabs(h - (c.re * libm::cos(*t) + c.im * libm::sin(*t) + radius)))
            .fold(0.0, f64::max);
        let deviation = if radius > 0.0 { spread.max(misfit) / radius } else { f64::INFINITY };
        Ok(Circularity {
            is_circular: deviation < BOUNDARY_CIRCULAR_TOL,
            center: c.re,
            center_im: c.im,
            radius,
            deviation,
        })
    }
}

/// Settings of the binned-profile circle fit used for clouds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileFit {
    /// Number of bins across `[min re, max re]`.
    pub bins: usize,
    /// Only bins whose top point satisfies `|re − c| <= frac · r` enter the
    /// residual; the profile is too steep to resolve near the rim.
    pub frac: f64,
}

impl Default for ProfileFit {
    fn default() -> Self {
        Self { bins: 12, frac: 0.8 }
    }
}

impl CircularityScore for BildCloud {
    fn circularity_score(&self) -> Result<Circularity> {
        profile_circularity(&self.points, ProfileFit::default())
    }
}

/// Fits `(re − c)² + im² = r²` to the highest point of each re-bin and
/// reports the largest relative radial residual among the central bins.
pub fn profile_circularity(points: &[UpperBildPoint], fit: ProfileFit) -> Result<Circularity> {
    if points.len() < CLOUD_MIN_POINTS {
        return Err(Error::TooFewPoints {
            got: points.len(),
            min: CLOUD_MIN_POINTS,
        });
    }
    if fit.bins < 3 {
        return Err(Error::InvalidArgument("profile fit needs at least 3 bins"));
    }
    let lo = points.iter().map(|p| p.re).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.re).fold(f64::NEG_INFINITY, f64::max);
    let width = hi - lo;
    let degenerate = Circularity {
        is_circular: false,
        center: 0.5 * (lo + hi),
        center_im: 0.0,
        radius: 0.0,
        deviation: f64::INFINITY,
    };
    if !(width > 0.0) {
        return Ok(degenerate);
    }
    let mut top: Vec<Option<UpperBildPoint>> = alloc::vec![None; fit.bins];
    for p in points {
        let b = (((p.re - lo) / width * fit.bins as f64) as usize).min(fit.bins - 1);
        if top[b].map_or(true, |t| p.im > t.im) {
            top[b] = Some(*p);
        }
    }
    let prof: Vec<UpperBildPoint> = top.into_iter().flatten().collect();
    // Linear least squares for x² + y² = 2 c x + (r² − c²).
    let solve = |pts: &[UpperBildPoint]| -> Option<(f64, f64)> {
        let (mut sxx, mut sx, mut s1, mut sxz, mut sz) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for p in pts {
            let z = p.re * p.re + p.im * p.im;
            sxx += p.re * p.re;
            sx += p.re;
            s1 += 1.0;
            sxz += p.re * z;
            sz += z;
        }
        let det = sxx * s1 - sx * sx;
        if det.abs() <= 1e-300 {
            return None;
        }
        let two_c = (sxz * s1 - sx * sz) / det;
        let k = (sxx * sz - sx * sxz) / det;
        let c = 0.5 * two_c;
        let r2 = k + c * c;
        (r2 > 0.0).then(|| (c, libm::sqrt(r2)))
    };
    let Some((mut c, mut r)) = solve(&prof) else {
        return Ok(degenerate);
    };
    let central: Vec<UpperBildPoint> = prof.iter().copied().filter(|p| libm::fabs(p.re - c) <= fit.frac * r).collect();
    if central.len() >= 3 {
        if let Some((c2, r2)) = solve(&central) {
            c = c2;
            r = r2;
        }
    }
    let used: Vec<&UpperBildPoint> = prof.iter().filter(|p| libm::fabs(p.re - c) <= fit.frac * r).collect();
    if used.len() < 2 {
        return Ok(degenerate);
    }
    let deviation = used
        .iter()
        .map(|p| libm::fabs(libm::hypot(p.re - c, p.im) - r) / r)
        .fold(0.0, f64::max);
    Ok(Circularity {
        is_circular: deviation < CLOUD_CIRCULAR_TOL,
        center: c,
        center_im: 0.0,
        radius: r,
        deviation,
    })
}

/// `2 · area(hull(U)) / area(hull(U ∪ Ū))` for the upper cloud `U`. Equals 1
/// when the sampled Bild is convex and drops when the full Bild has a notch
/// on the real axis.
pub fn hull_coverage(cloud: &BildCloud) -> f64 {
    let full = cloud.symmetric_hull().area();
    if full <= 0.0 {
        return 1.0;
    }
    2.0 * cloud.hull().area() / full
}

/// Default area ratio above which a cloud counts as convex.
pub const HULL_COVERAGE_MIN: f64 = 0.98;

/// Per-chunk seeds for reproducible sampling split into pieces.
pub fn chunk_seed(seed: u64, chunk: u64) -> u64 {
    derive_seed(seed, chunk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    const Z: Quaternion = Quaternion::ZERO;

    fn upper(a: Quaternion) -> QMatrix {
        QMatrix::from_rows(&[vec![Z, a], vec![Z, Z]]).unwrap()
    }

    #[test]
    fn tree_disk_examples() {
        let r = tree_disk(&upper(Quaternion::J.scale(2.0)), 1e-10).unwrap();
        assert_eq!(r.centers(), &[0.0]);
        assert!((r.max_radius() - 1.0).abs() < 1e-12);
        let r = tree_disk(&upper(Quaternion::ONE), 1e-10).unwrap();
        assert!((r.max_radius() - 0.5).abs() < 1e-12);
        let p3 = QMatrix::from_rows(&[vec![Z, Quaternion::I, Z], vec![Z, Z, Quaternion::K], vec![Z, Z, Z]]).unwrap();
        assert!((tree_disk(&p3, 1e-10).unwrap().max_radius() - libm::sqrt(0.5)).abs() < 1e-12);
    }

    #[test]
    fn cyclefree_examples() {
        let a = crate::qmatrix::direct_sum(&[upper(Quaternion::ONE), upper(Quaternion::K.scale(3.0))]).unwrap();
        assert!((cyclefree_disk(&a, 1e-10).unwrap().max_radius() - 1.5).abs() < 1e-12);
        assert_eq!(cyclefree_disk(&QMatrix::zeros(3), 1e-10).unwrap().max_radius(), 0.0);
    }

    #[test]
    fn real_extent_examples() {
        assert_eq!(real_extent(&DiskUnion::disk(0.0, 1.0)), (-1.0, 1.0));
        let u = DiskUnion::new(vec![0.0, 0.5, 1.0], vec![0.0, 0.0, 0.0]).unwrap();
        assert_eq!(real_extent(&u), (0.0, 1.0));
    }

    #[test]
    fn scalar_shift_is_single_disk() {
        let n = upper(Quaternion::ONE);
        let u = disk_union(&[2.0, 2.0], &n, 16, 1e-10).unwrap();
        assert_eq!(u.centers(), &[2.0]);
        assert!((u.max_radius() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn union_distance() {
        let u = DiskUnion::new(vec![0.0, 1.0], vec![0.5, 0.5]).unwrap();
        assert_eq!(u.distance(0.5, 0.5), 0.0);
        assert!((u.distance(0.5, 1.0) - 0.5).abs() < 1e-12);
        assert!((u.distance(3.0, 0.0) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn zero_and_identity_clouds() {
        let z = sample_bild(&QMatrix::zeros(3), 100, 1);
        assert!(z.points.iter().all(|p| *p == UpperBildPoint::new(0.0, 0.0)));
        let i = sample_bild(&QMatrix::identity(3), 100, 1);
        assert!(i.points.iter().all(|p| (p.re - 1.0).abs() < 1e-12 && p.im < 1e-12));
    }

    #[test]
    fn iconv_of_endpoints_fills_segment() {
        let c = iconv_clouds(&[vec![Z], vec![Quaternion::ONE]], 10_000, 3).unwrap();
        let re: Vec<f64> = c.points.iter().map(|q| q.re()).collect();
        assert!(re.iter().all(|x| (0.0..=1.0).contains(x)));
        assert!(re.iter().copied().fold(1.0, f64::min) < 0.01);
        assert!(re.iter().copied().fold(0.0, f64::max) > 0.99);
        let single = iconv_clouds(&[vec![Quaternion::I, Quaternion::J]], 100, 3).unwrap();
        assert!(single.points.iter().all(|q| *q == Quaternion::I || *q == Quaternion::J));
    }

    #[test]
    fn support_examples() {
        let nil = CMatrix::from_real(2, |i, j| if (i, j) == (0, 1) { 1.0 } else { 0.0 });
        let b = support_boundary(&nil, 64).unwrap();
        assert!(b.support.iter().all(|h| (h - 0.5).abs() < 1e-12));
        let c = b.circularity_score().unwrap();
        assert!(c.is_circular && c.center.abs() < 1e-12 && (c.radius - 0.5).abs() < 1e-12);

        let seg = CMatrix::from_real(2, |i, j| if (i, j) == (1, 1) { 1.0 } else { 0.0 });
        let b = support_boundary(&seg, 8).unwrap();
        assert!((b.support[0] - 1.0).abs() < 1e-12 && b.support[4].abs() < 1e-12);
        assert!(!b.circularity_score().unwrap().is_circular);
        assert!(support_boundary(&seg, 4).is_err());
    }

    #[test]
    fn profile_of_exact_half_disk() {
        let mut rng = rng_from_seed(5);
        let pts: Vec<UpperBildPoint> = (0..20_000)
            .map(|_| {
                let t = crate::sampling::uniform01(&mut rng) * core::f64::consts::PI;
                let r = 2.0 * libm::sqrt(crate::sampling::uniform01(&mut rng));
                UpperBildPoint::new(0.3 + r * libm::cos(t), r * libm::sin(t))
            })
            .collect();
        let c = profile_circularity(&pts, ProfileFit::default()).unwrap();
        assert!(c.is_circular, "{c:?}");
        assert!((c.center - 0.3).abs() < 1e-2 && (c.radius - 2.0).abs() < 1e-2);
        assert!(profile_circularity(&pts[..10], ProfileFit::default()).is_err());
    }
}

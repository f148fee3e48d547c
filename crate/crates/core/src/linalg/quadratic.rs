//! Maximization of `f(β) = ½ βᵀ S β` over nonnegative unit vectors, with or
//! without the level constraint `Σ d_i β_i² = d`.
//!
//! Substituting `u = β²` turns `f` into `½ Σ S_ij √(u_i u_j)`, a concave
//! function on a polytope, so projected ascent from any interior start reaches
//! the global maximum. Restarts guard against stalls on the boundary.

use alloc::vec::Vec;

use super::perron::perron_max;
use super::{dot, norm2, SymMatrix};
use crate::error::{Error, Result};
use crate::sampling::{derive_seed, gaussian, rng_from_seed};

const ARMIJO: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxOptions {
    pub restarts: usize,
    /// Accepted violation of `Σ d_i β_i² = d`.
    pub tol: f64,
    pub seed: u64,
    pub max_iter: usize,
}

impl Default for MaxOptions {
    fn default() -> Self {
        Self {
            restarts: 16,
            tol: 1e-10,
            seed: 0x5eed,
            max_iter: 20_000,
        }
    }
}

fn f_value(s: &SymMatrix, b: &[f64]) -> f64 {
    0.5 * s.quad(b)
}

fn normalize(b: &mut [f64]) -> bool {
    let n = norm2(b);
    if n == 0.0 || !n.is_finite() {
        return false;
    }
    b.iter_mut().for_each(|x| *x /= n);
    true
}

/// A feasible point on `{β ≥ 0, |β| = 1, Σ d_i β_i² = d}` near `b`.
///
/// Negative entries are clamped, then the entries above and below the level
/// are rescaled as two groups so the level holds, and the result normalized.
fn retract(b: &mut [f64], dv: &[f64], d: f64, eq_tol: f64) -> bool {
    for x in b.iter_mut() {
        if *x < 0.0 {
            *x = 0.0;
        }
    }
    let group = |i: usize| -> i8 {
        if dv[i] > d + eq_tol {
            1
        } else if dv[i] < d - eq_tol {
            -1
        } else {
            0
        }
    };
    let mass = |b: &[f64], g: i8| -> (f64, f64) {
        let mut m = 0.0;
        let mut w = 0.0;
        for (i, x) in b.iter().enumerate() {
            if group(i) == g {
                m += x * x;
                w += dv[i] * x * x;
            }
        }
        (m, w)
    };
    let total: f64 = b.iter().map(|x| x * x).sum();
    if total == 0.0 {
        return false;
    }
    for g in [1i8, -1] {
        if mass(b, g).0 == 0.0 {
            // Seed the empty side so the level can be reached.
            match (0..b.len()).find(|&i| group(i) == g) {
                Some(i) => b[i] = 1e-4 * libm::sqrt(total),
                None => return false,
            }
        }
    }
    let (mh, gh) = mass(b, 1);
    let (ml, gl) = mass(b, -1);
    let (me, _) = mass(b, 0);
    let ph = gh - d * mh;
    let pl = d * ml - gl;
    if ph <= 0.0 || pl <= 0.0 {
        return false;
    }
    let q = (pl * mh + ph * ml) / (mh + ml);
    let lam = 1.0 / (pl * mh + ph * ml + q * me);
    let (a, bb, c) = (libm::sqrt(lam * pl), libm::sqrt(lam * ph), libm::sqrt(lam * q));
    for (i, x) in b.iter_mut().enumerate() {
        *x *= match group(i) {
            1 => a,
            -1 => bb,
            _ => c,
        };
    }
    normalize(b)
}

/// Projected gradient ascent from a feasible start. `dv` is `None` for the
/// plain sphere.
fn ascend(s: &SymMatrix, dv: Option<(&[f64], f64, f64)>, mut b: Vec<f64>, max_iter: usize) -> (f64, Vec<f64>) {
    let n = s.n();
    let mut f = f_value(s, &b);
    let retract_into = |x: &mut [f64]| -> bool {
        match dv {
            Some((dv, d, eq_tol)) => retract(x, dv, d, eq_tol),
            None => {
                x.iter_mut().for_each(|v| *v = v.max(0.0));
                normalize(x)
            }
        }
    };
    for _ in 0..max_iter {
        let g = s.mul_vec(&b);
        let mut p = g.clone();
        let c1 = dot(&p, &b);
        p.iter_mut().zip(&b).for_each(|(pi, bi)| *pi -= c1 * bi);
        if let Some((dv, _, _)) = dv {
            let mut u: Vec<f64> = b.iter().zip(dv).map(|(x, di)| x * di).collect();
            let cb = dot(&u, &b);
            u.iter_mut().zip(&b).for_each(|(ui, bi)| *ui -= cb * bi);
            if normalize(&mut u) {
                let c2 = dot(&p, &u);
                p.iter_mut().zip(&u).for_each(|(pi, ui)| *pi -= c2 * ui);
            }
        }
        if norm2(&p) <= 1e-15 * (1.0 + s.max_abs()) {
            break;
        }
        let mut t = 1.0;
        let mut accepted = None;
        while t > 1e-18 {
            let mut trial: Vec<f64> = (0..n).map(|i| b[i] + t * p[i]).collect();
            if retract_into(&mut trial) {
                let ft = f_value(s, &trial);
                // Sufficient increase along the realized displacement.
                let slope: f64 = g.iter().zip(trial.iter().zip(&b)).map(|(gi, (x, y))| gi * (x - y)).sum();
                if ft > f && ft - f >= ARMIJO * slope.max(0.0) {
                    accepted = Some((ft, trial));
                    break;
                }
            }
            t *= 0.5;
        }
        match accepted {
            Some((ft, trial)) => {
                let gain = ft - f;
                f = ft;
                b = trial;
                if gain <= 1e-16 * (1.0 + libm::fabs(f)) {
                    break;
                }
            }
            None => break,
        }
    }
    (f, b)
}

fn random_start(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = rng_from_seed(seed);
    (0..n).map(|_| libm::fabs(gaussian(&mut rng)) + 1e-3).collect()
}

/// `max ½βᵀSβ` over nonnegative unit `β`, by multi-start projected ascent.
pub fn sphere_max_quadratic(s: &SymMatrix, opts: &MaxOptions) -> (f64, Vec<f64>) {
    let n = s.n();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for r in 0..opts.restarts.max(1) {
        let mut b = random_start(n, derive_seed(opts.seed, r as u64));
        normalize(&mut b);
        let cand = ascend(s, None, b, opts.max_iter);
        if best.as_ref().map_or(true, |(v, _)| cand.0 > *v) {
            best = Some(cand);
        }
    }
    best.expect("at least one restart")
}

/// `r(d) = max ½βᵀSβ` subject to `|β| = 1`, `β ≥ 0` and `Σ d_i β_i² = d`.
///
/// At the ends of `[min d_i, max d_i]` the feasible set is the nonnegative
/// sphere on the extremal indices, and the value is half the Perron root of
/// that principal submatrix.
pub fn constrained_max_quadratic(s: &SymMatrix, d_vec: &[f64], d: f64, opts: &MaxOptions) -> Result<(f64, Vec<f64>)> {
    constrained_max_quadratic_from(s, d_vec, d, opts, None)
}

/// As [`constrained_max_quadratic`], with an extra start point tried first.
pub fn constrained_max_quadratic_from(
    s: &SymMatrix,
    d_vec: &[f64],
    d: f64,
    opts: &MaxOptions,
    warm: Option<&[f64]>,
) -> Result<(f64, Vec<f64>)> {
    let n = s.n();
    if d_vec.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: d_vec.len(),
        });
    }
    if n == 0 || !d.is_finite() {
        return Err(Error::InvalidArgument("empty matrix or non-finite level"));
    }
    let lo = d_vec.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = d_vec.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if d < lo - opts.tol || d > hi + opts.tol {
        return Err(Error::LevelOutOfRange { level: d, lo, hi });
    }
    let eq_tol = 1e-12 * (1.0 + libm::fabs(lo).max(libm::fabs(hi)));
    if d <= lo + eq_tol || d >= hi - eq_tol {
        let target = if d <= lo + eq_tol { lo } else { hi };
        let idx: Vec<usize> = (0..n).filter(|&i| libm::fabs(d_vec[i] - target) <= eq_tol).collect();
        return Ok(reduced_perron(s, &idx));
    }

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut consider = |cand: (f64, Vec<f64>)| {
        if best.as_ref().map_or(true, |(v, _)| cand.0 > *v) {
            best = Some(cand);
        }
    };
    let ctx = Some((d_vec, d, eq_tol));
    if let Some(w) = warm {
        let mut b: Vec<f64> = w.iter().map(|x| x.max(0.0) + 1e-9).collect();
        if b.len() == n && retract(&mut b, d_vec, d, eq_tol) {
            consider(ascend(s, ctx, b, opts.max_iter));
        }
    }
    for r in 0..opts.restarts.max(1) {
        let mut b = random_start(n, derive_seed(opts.seed, r as u64));
        if retract(&mut b, d_vec, d, eq_tol) {
            consider(ascend(s, ctx, b, opts.max_iter));
        }
    }
    let (v, b) = best.ok_or(Error::Internal("no feasible start on the level set"))?;
    let g: f64 = b.iter().zip(d_vec).map(|(x, di)| di * x * x).sum();
    if libm::fabs(g - d) > opts.tol.max(1e3 * eq_tol) {
        return Err(Error::Internal("level constraint drifted"));
    }
    Ok((v, b))
}

/// `½ λ_max` of the principal submatrix on `idx`, embedded back into `ℝⁿ`.
pub fn reduced_perron(s: &SymMatrix, idx: &[usize]) -> (f64, Vec<f64>) {
    let (lam, v) = perron_max(&s.submatrix(idx));
    let mut b = alloc::vec![0.0; s.n()];
    for (k, &i) in idx.iter().enumerate() {
        b[i] = v[k];
    }
    (0.5 * lam, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_44(k1: f64, k2: f64) -> (SymMatrix, Vec<f64>) {
        let s = SymMatrix::from_fn(3, |i, j| match (i, j) {
            (0, 1) => k1,
            (0, 2) => k2,
            _ => 0.0,
        });
        (s, alloc::vec![0.0, 1.0, 1.0])
    }

    #[test]
    fn endpoint_with_unique_minimum() {
        let (s, dv) = example_44(0.6, 0.8);
        let (v, b) = constrained_max_quadratic(&s, &dv, 0.0, &MaxOptions::default()).unwrap();
        assert_eq!(v, 0.0);
        assert_eq!(b, alloc::vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn ellipse_profile() {
        let (s, dv) = example_44(0.6, 0.8);
        for d in [0.1, 0.25, 0.5, 0.9] {
            let (v, b) = constrained_max_quadratic(&s, &dv, d, &MaxOptions::default()).unwrap();
            let exact = libm::sqrt(d * (1.0 - d));
            assert!((v - exact).abs() < 1e-9, "d={d} v={v} exact={exact}");
            assert!((norm2(&b) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn out_of_range_level() {
        let (s, dv) = example_44(1.0, 1.0);
        assert!(matches!(
            constrained_max_quadratic(&s, &dv, 1.5, &MaxOptions::default()),
            Err(Error::LevelOutOfRange { .. })
        ));
    }

    #[test]
    fn sphere_max_matches_perron() {
        let s = SymMatrix::from_fn(3, |i, j| if i.abs_diff(j) == 1 { 1.0 } else { 0.0 });
        let (v, _) = sphere_max_quadratic(&s, &MaxOptions::default());
        assert!((v - libm::sqrt(2.0) / 2.0).abs() < 1e-10);
    }
}

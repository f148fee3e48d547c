//! Perron pair of a nonnegative symmetric matrix by shifted power iteration.

use alloc::vec::Vec;

use super::{norm2, SymMatrix};

const MAX_ITER: usize = 200_000;
const RESIDUAL_TOL: f64 = 1e-13;

/// `λ_max(S)` and a nonnegative unit eigenvector.
///
/// Each connected block of the support is iterated separately; the block with
/// the largest eigenvalue wins (first block on ties) and the vector vanishes
/// elsewhere. `S` must be entrywise nonnegative.
pub fn perron_max(s: &SymMatrix) -> (f64, Vec<f64>) {
    let n = s.n();
    debug_assert!(s.is_nonnegative());
    if n == 0 {
        return (0.0, Vec::new());
    }
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for comp in s.support_components() {
        let sub = s.submatrix(&comp);
        let (lam, v) = connected_perron(&sub);
        if lam > best.0 {
            let mut full = alloc::vec![0.0; n];
            for (k, &i) in comp.iter().enumerate() {
                full[i] = v[k];
            }
            best = (lam, full);
        }
    }
    best
}

fn connected_perron(s: &SymMatrix) -> (f64, Vec<f64>) {
    let n = s.n();
    if n == 1 {
        return (s[(0, 0)], alloc::vec![1.0]);
    }
    let row_max = (0..n)
        .map(|i| (0..n).map(|j| s[(i, j)]).sum::<f64>())
        .fold(0.0, f64::max);
    if row_max == 0.0 {
        let mut v = alloc::vec![0.0; n];
        v[0] = 1.0;
        return (0.0, v);
    }
    // The shift separates λ_max from −λ_max on bipartite supports.
    let shift = 0.5 * row_max;
    let mut v = alloc::vec![1.0 / libm::sqrt(n as f64); n];
    let mut lam = 0.0;
    for _ in 0..MAX_ITER {
        let sv = s.mul_vec(&v);
        lam = sv.iter().zip(&v).map(|(a, b)| a * b).sum();
        let res = libm::sqrt(sv.iter().zip(&v).map(|(a, b)| (a - lam * b) * (a - lam * b)).sum());
        if res <= RESIDUAL_TOL * row_max {
            break;
        }
        let w: Vec<f64> = sv.iter().zip(&v).map(|(a, b)| a + shift * b).collect();
        let nw = norm2(&w);
        v = w.into_iter().map(|x| x / nw).collect();
    }
    for x in v.iter_mut() {
        if *x < 0.0 {
            *x = 0.0;
        }
    }
    let nv = norm2(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    (lam, v)
}

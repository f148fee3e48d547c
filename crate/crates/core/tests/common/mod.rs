//! Random instance generators shared by the integration tests.
#![allow(dead_code)]

use quatrange_core::qmatrix::direct_sum;
use quatrange_core::sampling::{gaussian, rng_from_seed, uniform01, uniform_index, unit_quaternion, Rng};
use quatrange_core::{Permutation, QMatrix, Quaternion};

pub fn rng(seed: u64) -> Rng {
    rng_from_seed(seed)
}

pub fn gaussian_quaternion(rng: &mut Rng) -> Quaternion {
    Quaternion::new(gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng))
}

/// Uniform direction with norm uniform in `[0.5, 1.5]`.
pub fn entry(rng: &mut Rng) -> Quaternion {
    unit_quaternion(rng).scale(0.5 + uniform01(rng))
}

pub fn random_matrix(rng: &mut Rng, n: usize) -> QMatrix {
    QMatrix::from_fn(n, |_, _| gaussian_quaternion(rng))
}

pub fn random_real_matrix(rng: &mut Rng, n: usize) -> QMatrix {
    QMatrix::from_fn(n, |_, _| Quaternion::real(gaussian(rng)))
}

pub fn random_permutation(rng: &mut Rng, n: usize) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    for k in (1..n).rev() {
        v.swap(k, uniform_index(rng, k + 1));
    }
    Permutation::new(v).unwrap()
}

/// Random labelled tree: vertex `k` hangs from a uniform earlier vertex,
/// then labels are shuffled.
pub fn random_tree_edges(rng: &mut Rng, n: usize) -> Vec<(usize, usize)> {
    let p = random_permutation(rng, n);
    (1..n).map(|k| (p[uniform_index(rng, k)], p[k])).collect()
}

/// Nilpotent tree matrix: each tree edge gets one nonzero entry in a random
/// orientation.
pub fn random_tree_matrix(rng: &mut Rng, n: usize) -> QMatrix {
    let mut e = vec![Quaternion::ZERO; n * n];
    for (u, v) in random_tree_edges(rng, n) {
        let (i, j) = if uniform01(rng) < 0.5 { (u, v) } else { (v, u) };
        e[i * n + j] = entry(rng);
    }
    QMatrix::from_entries(n, e).unwrap()
}

pub fn tri(a12: Quaternion, a13: Quaternion, a23: Quaternion) -> QMatrix {
    let z = Quaternion::ZERO;
    QMatrix::from_rows(&[vec![z, a12, a13], vec![z, z, a23], vec![z, z, z]]).unwrap()
}

/// Strictly upper triangular 3×3 with exactly one zero above the diagonal.
pub fn random_cyclefree3(rng: &mut Rng) -> QMatrix {
    let mut e = [entry(rng), entry(rng), entry(rng)];
    e[uniform_index(rng, 3)] = Quaternion::ZERO;
    tri(e[0], e[1], e[2])
}

pub fn random_cyclic3(rng: &mut Rng) -> QMatrix {
    tri(entry(rng), entry(rng), entry(rng))
}

/// Cyclic 3×3 whose triple product is real: `a23 = a12* a13 s`, `s > 0`.
pub fn random_real_triple3(rng: &mut Rng) -> QMatrix {
    let a12 = entry(rng);
    let a13 = entry(rng);
    let s = (0.5 + uniform01(rng)) / (a12.norm() * a13.norm());
    let s = if uniform01(rng) < 0.5 { s } else { -s };
    tri(a12, a13, a12.conj() * a13 * s)
}

/// Cyclic 3×3 with `|π_ℙ(a13* a12 a23)| >= min_pure`.
pub fn random_nonreal_triple3(rng: &mut Rng, min_pure: f64) -> QMatrix {
    loop {
        let m = random_cyclic3(rng);
        let t = m[(0, 2)].conj() * m[(0, 1)] * m[(1, 2)];
        if t.pure_norm() >= min_pure {
            return m;
        }
    }
}

/// Random real diagonal in `[-1, 1]` plus a nilpotent tree.
pub fn random_d_plus_n(rng: &mut Rng, n: usize) -> (Vec<f64>, QMatrix) {
    let d = (0..n).map(|_| 2.0 * uniform01(rng) - 1.0).collect();
    (d, random_tree_matrix(rng, n))
}

pub fn add_diagonal(d: &[f64], n: &QMatrix) -> QMatrix {
    QMatrix::from_fn(n.n(), |i, j| if i == j { n[(i, i)] + Quaternion::real(d[i]) } else { n[(i, j)] })
}

/// Haar-like unitary from quaternionic Gram–Schmidt on Gaussian columns.
pub fn random_unitary(rng: &mut Rng, n: usize) -> QMatrix {
    let mut cols: Vec<Vec<Quaternion>> = (0..n).map(|_| (0..n).map(|_| gaussian_quaternion(rng)).collect()).collect();
    for k in 0..n {
        for j in 0..k {
            // ⟨u_j, v_k⟩ = Σ u_ij* v_ik, removed as u_j · ⟨u_j, v_k⟩.
            let ip = (0..n).fold(Quaternion::ZERO, |acc, i| acc + cols[j][i].conj() * cols[k][i]);
            for i in 0..n {
                let proj = cols[j][i] * ip;
                cols[k][i] = cols[k][i] - proj;
            }
        }
        let nrm = cols[k].iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt();
        for q in cols[k].iter_mut() {
            *q = q.scale(1.0 / nrm);
        }
    }
    QMatrix::from_fn(n, |i, j| cols[j][i])
}

/// Random block-diagonal matrix with `blocks` random blocks of size 1..=max.
pub fn random_direct_sum(rng: &mut Rng, blocks: usize, max: usize) -> (Vec<QMatrix>, QMatrix) {
    let bs: Vec<QMatrix> = (0..blocks)
        .map(|_| {
            let n = 1 + uniform_index(rng, max);
            random_matrix(rng, n).scale(0.5)
        })
        .collect();
    let sum = direct_sum(&bs).unwrap();
    (bs, sum)
}

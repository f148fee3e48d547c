//! One line per acceptance criterion: PASS/FAIL, the measured value and the
//! threshold it is held to. Exits nonzero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::time::Instant;

use common::*;
use quatrange::fixtures;
use quatrange::report::real_cmatrix;
use quatrange::verify::{continuity_ratio, ellipse_deviation, ellipse_radius_error, union_excess};
use quatrange_core::linalg::{hausdorff, perron_max, sphere_max_quadratic, MaxOptions, SymMatrix};
use quatrange_core::predicates::{classify3, realifying_unitary};
use quatrange_core::range::*;
use quatrange_core::sampling::{derive_seed, uniform_index};
use quatrange_core::QMatrix;

const TOL: f64 = 1e-10;
const SEED: u64 = 0xacce;

struct Line {
    id: u32,
    name: &'static str,
    ok: bool,
    detail: String,
}

fn report(id: u32, name: &'static str, parts: &[(bool, String)]) -> Line {
    let ok = parts.iter().all(|p| p.0);
    let detail = parts
        .iter()
        .map(|(ok, s)| format!("{}{s}", if *ok { "" } else { "!! " }))
        .collect::<Vec<_>>()
        .join("; ");
    Line { id, name, ok, detail }
}

fn le(label: &str, v: f64, thr: f64) -> (bool, String) {
    (v <= thr, format!("{label} = {v:.3e} <= {thr:.1e}"))
}

fn ge(label: &str, v: f64, thr: f64) -> (bool, String) {
    (v >= thr, format!("{label} = {v:.6} >= {thr}"))
}

fn count(label: &str, bad: usize, total: usize) -> (bool, String) {
    (bad == 0, format!("{label}: {bad}/{total} misclassified"))
}

fn c1() -> Line {
    let t = Instant::now();
    let a = fixtures::load(fixtures::EX3_6);
    let block = QMatrix::from_fn(2, |i, j| a[(i, j)]);
    let r = tree_disk(&block, TOL).unwrap().radii()[0];
    let cloud = sample_bild(&a, 100_000, SEED);
    let top = cloud.max_modulus();
    let secs = t.elapsed().as_secs_f64();
    report(
        1,
        "ex3_6 disk",
        &[
            le("|radius - 1|", (r - 1.0).abs(), 1e-10),
            le("max|p| - 1", top - 1.0, 1e-9),
            ge("max|p|", top, 0.999),
            le("seconds", secs, 5.0),
        ],
    )
}

fn c2() -> Line {
    let t = Instant::now();
    let mut parts = Vec::new();
    for (k, a) in fixtures::ex4_4() {
        let u = disk_union_of(&a, 512, TOL).unwrap();
        parts.push(le(&format!("k={k} max|r(d) - sqrt(kd(1-d))|"), ellipse_radius_error(&u, k), 1e-6));
        parts.push(le(&format!("k={k} ellipse deviation"), ellipse_deviation(&u.envelope(ENVELOPE_ANGLES), k), 1e-4));
    }
    parts.push(le("seconds", t.elapsed().as_secs_f64(), 10.0));
    report(2, "ex4_4 ellipse", &parts)
}

fn c3() -> Line {
    let a = fixtures::load(fixtures::EX3_8);
    let b = support_boundary(&real_cmatrix(&a), 720).unwrap();
    let c = b.circularity_score().unwrap();
    let mut center = le("|center|", c.center.hypot(c.center_im), 1e-8);
    center.1.push_str(&format!(" (radius r = {:.12})", c.radius));
    report(3, "ex3_8 circular W_C", &[le("support spread", b.support_spread(), 1e-6), center])
}

fn c4() -> Line {
    let a = fixtures::load(fixtures::EX5_4);
    let c = classify3(&a, TOL).unwrap();
    let (_, r) = realifying_unitary(&a, TOL).unwrap();
    let cov = hull_coverage(&sample_bild(&a, 100_000, SEED));
    report(
        4,
        "ex5_4 convex, noncircular",
        &[
            (c.convex && !c.circular, format!("convex = {}, circular = {}", c.convex, c.circular)),
            le("max pure part of R", r.max_pure_norm(), 1e-10),
            ge("hull coverage", cov, HULL_COVERAGE_MIN),
        ],
    )
}

const CIRCULAR_SAMPLES: usize = 16_000_000;

fn c5() -> Line {
    let mut r = rng(derive_seed(SEED, 5));
    let (mut bad_free, mut bad_cyc, mut worst_center, mut worst_free, mut best_cyc) = (0, 0, 0.0f64, 0.0f64, f64::INFINITY);
    for t in 0..60u64 {
        let free = t < 30;
        let a = if free { random_cyclefree3(&mut r) } else { random_cyclic3(&mut r) };
        let s = sample_bild(&a, CIRCULAR_SAMPLES, derive_seed(SEED, 500 + t)).circularity_score().unwrap();
        if free {
            worst_free = worst_free.max(s.deviation);
            let off = s.center.abs() / s.radius;
            worst_center = worst_center.max(off);
            if !s.is_circular || off > 5e-3 {
                bad_free += 1;
            }
        } else {
            best_cyc = best_cyc.min(s.deviation);
            if s.is_circular {
                bad_cyc += 1;
            }
        }
    }
    report(
        5,
        "circular iff cycle-free (3x3)",
        &[
            count("cycle-free", bad_free, 30),
            count("cyclic", bad_cyc, 30),
            le("max |center|/radius", worst_center, 5e-3),
            (true, format!("deviation: cycle-free max {worst_free:.4}, cyclic min {best_cyc:.4}, cut {CLOUD_CIRCULAR_TOL}")),
        ],
    )
}

fn c6() -> Line {
    let mut r = rng(derive_seed(SEED, 6));
    let (mut bad_real, mut bad_pure) = (0, 0);
    let (mut lo_real, mut hi_pure) = (f64::INFINITY, 0.0f64);
    for t in 0..60u64 {
        let real = t < 30;
        let a = if real { random_real_triple3(&mut r) } else { random_nonreal_triple3(&mut r, 0.1) };
        let cov = hull_coverage(&sample_bild(&a, 100_000, derive_seed(SEED, 600 + t)));
        if real {
            lo_real = lo_real.min(cov);
            bad_real += usize::from(cov < HULL_COVERAGE_MIN);
        } else {
            hi_pure = hi_pure.max(cov);
            bad_pure += usize::from(cov >= HULL_COVERAGE_MIN);
        }
    }
    report(
        6,
        "convex iff real triple product (3x3)",
        &[
            count("real triple", bad_real, 30),
            count("non-real triple", bad_pure, 30),
            (true, format!("coverage: real min {lo_real:.4}, non-real max {hi_pure:.4}, cut {HULL_COVERAGE_MIN}")),
        ],
    )
}

fn grid_oracle(s: &SymMatrix, steps: usize) -> f64 {
    let h = std::f64::consts::FRAC_PI_2 / steps as f64;
    let f = |b: &[f64]| 0.5 * s.quad(b);
    match s.n() {
        2 => (0..=steps).map(|k| f(&[(k as f64 * h).cos(), (k as f64 * h).sin()])).fold(0.0, f64::max),
        3 => {
            let mut best: f64 = 0.0;
            for a in 0..=steps {
                let (sa, ca) = (a as f64 * h).sin_cos();
                for b in 0..=steps {
                    let (sb, cb) = (b as f64 * h).sin_cos();
                    best = best.max(f(&[ca, sa * cb, sa * sb]));
                }
            }
            best
        }
        _ => unreachable!(),
    }
}

fn c7() -> Line {
    let mut r = rng(derive_seed(SEED, 7));
    let (mut worst, mut worst_grid, mut small) = (0.0f64, 0.0f64, 0);
    for _ in 0..50 {
        let n = 2 + uniform_index(&mut r, 5);
        let a = random_tree_matrix(&mut r, n);
        let s = a.symmetric_modulus();
        let perron = 0.5 * perron_max(&s).0;
        worst = worst.max((perron - sphere_max_quadratic(&s, &MaxOptions::default()).0).abs());
        if n <= 3 {
            small += 1;
            worst_grid = worst_grid.max((perron - grid_oracle(&s, 2000)).abs());
        }
    }
    report(
        7,
        "Perron radius vs direct maximization",
        &[le("max |perron - multistart| (50 trees)", worst, 1e-8), le(&format!("max |perron - grid| ({small} with n<=3)"), worst_grid, 1e-4)],
    )
}

fn c8() -> Line {
    let mut r = rng(derive_seed(SEED, 8));
    let (mut excess, mut ratio) = (0.0f64, 0.0f64);
    for t in 0..20u64 {
        let n = 2 + uniform_index(&mut r, 4);
        let (d, nil) = random_d_plus_n(&mut r, n);
        let a = add_diagonal(&d, &nil);
        let u = disk_union(&d, &nil, 512, TOL).unwrap();
        excess = excess.max(union_excess(&u, &sample_bild(&a, 100_000, derive_seed(SEED, 800 + t))));
        ratio = ratio.max(continuity_ratio(&u));
    }
    report(
        8,
        "D+N lies in the disk union",
        &[le("max sample distance to union", excess, 1e-6), le("max jump / neighbouring jump", ratio, 10.0)],
    )
}

fn c9() -> Line {
    let mut r = rng(derive_seed(SEED, 9));
    let mut worst: f64 = 0.0;
    let mut cases = vec![];
    let ex36 = fixtures::load(fixtures::EX3_6);
    cases.push((vec![QMatrix::from_fn(2, |i, j| ex36[(i, j)]), QMatrix::from_fn(1, |_, _| ex36[(2, 2)])], ex36));
    for _ in 0..10 {
        let blocks = 2 + uniform_index(&mut r, 2);
        cases.push(random_direct_sum(&mut r, blocks, 3));
    }
    let total = cases.len();
    for (t, (blocks, sum)) in cases.into_iter().enumerate() {
        let seed = derive_seed(SEED, 900 + t as u64);
        let direct = sample_bild(&sum, 100_000, seed).hull();
        let clouds: Vec<_> = blocks.iter().enumerate().map(|(k, b)| sample_range(b, 100_000, derive_seed(seed, k as u64 + 1))).collect();
        let iconv = iconv_clouds(&clouds, 100_000, derive_seed(seed, 99)).unwrap().hull();
        worst = worst.max(hausdorff(&direct, &iconv));
    }
    report(9, "direct sum vs inter-convex hull", &[le(&format!("max hull distance ({total} sums)"), worst, 2e-2)])
}

fn main() {
    let criteria: [fn() -> Line; 9] = [c1, c2, c3, c4, c5, c6, c7, c8, c9];
    let mut failed = 0;
    for c in criteria {
        let t = Instant::now();
        let line = c();
        println!(
            "criterion {} {}: {} [{}] ({:.1} s)",
            line.id,
            if line.ok { "PASS" } else { "FAIL" },
            line.name,
            line.detail,
            t.elapsed().as_secs_f64()
        );
        failed += usize::from(!line.ok);
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

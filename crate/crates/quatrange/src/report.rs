//! JSON reports for `analyze`, `classify` and `bild`.

use quatrange_core::graph::{
    build_graph, component_permutation, is_cycle_free, is_tree, tree_triangularizing_permutation, triangularizing_permutation,
};
use quatrange_core::predicates::{classify3, max_direction_class, realifying_unitary};
use quatrange_core::qmatrix::CMatrix;
use quatrange_core::range::{cyclefree_disk, disk_union, sample_bild, support_boundary, BildCloud, DiskUnion, ENVELOPE_ANGLES};
use quatrange_core::{QMatrix, Quaternion};
use serde::Serialize;

use crate::io::MatrixFile;
use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub n: usize,
    pub connected: bool,
    pub cycle_free: bool,
    pub tree: bool,
    pub edges: usize,
    pub loops: usize,
    /// 1-based vertex sets.
    pub components: Vec<Vec<usize>>,
    pub component_permutation: Vec<usize>,
    /// 1-based permutation making the matrix strictly upper triangular, if any.
    pub permutation: Option<Vec<usize>>,
    pub nilpotent: bool,
    pub upper_triangular: bool,
    pub strictly_upper_triangular: bool,
    pub real_diagonal: bool,
    pub classification: Option<ClassifyReport>,
}

pub fn analyze(a: &QMatrix, tol: f64) -> AnalyzeReport {
    let g = build_graph(a);
    let nilpotent = a.is_nilpotent(tol);
    let tree = is_tree(&g);
    let permutation = if nilpotent && tree {
        tree_triangularizing_permutation(a, &g, tol).ok()
    } else if nilpotent {
        triangularizing_permutation(a).ok()
    } else {
        None
    };
    let classification = (a.n() == 3 && nilpotent).then(|| classify(a, tol).ok()).flatten();
    AnalyzeReport {
        n: a.n(),
        connected: g.is_connected(),
        cycle_free: is_cycle_free(&g),
        tree,
        edges: g.edge_count(),
        loops: g.loop_count(),
        components: g.components().iter().map(|c| c.iter().map(|i| i + 1).collect()).collect(),
        component_permutation: component_permutation(&g).to_one_based(),
        permutation: permutation.map(|p| p.to_one_based()),
        nilpotent,
        upper_triangular: a.is_upper_triangular(),
        strictly_upper_triangular: a.is_strictly_upper_triangular(),
        real_diagonal: a.has_real_diagonal(),
        classification,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MaxDirectionReport {
    pub class: [f64; 4],
    pub modulus: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub cycle_free: bool,
    pub triple_product: [f64; 4],
    pub circular: bool,
    pub convex: bool,
    pub realifiable: bool,
    pub permutation: Vec<usize>,
    pub max_direction: Option<MaxDirectionReport>,
    /// `U` and `R = U* T U` for the triangular form `T` when it realifies.
    pub realifying_unitary: Option<MatrixFile>,
    pub realified: Option<MatrixFile>,
}

pub fn classify(a: &QMatrix, tol: f64) -> Result<ClassifyReport, CliError> {
    let c = classify3(a, tol)?;
    let t = a.permute(&c.permutation)?;
    let full = !c.cycle_free;
    let max_direction = full.then(|| max_direction_class(&t, tol).ok()).flatten().map(|m| MaxDirectionReport {
        class: m.class.to_array(),
        modulus: m.modulus,
    });
    let realified = (full && c.convex).then(|| realifying_unitary(&t, tol).ok()).flatten();
    Ok(ClassifyReport {
        cycle_free: c.cycle_free,
        triple_product: c.triple_product.to_array(),
        circular: c.circular,
        convex: c.convex,
        realifiable: c.realifiable,
        permutation: c.permutation.to_one_based(),
        max_direction,
        realifying_unitary: realified.as_ref().map(|(u, _)| MatrixFile::from_matrix(u)),
        realified: realified.as_ref().map(|(_, r)| MatrixFile::from_matrix(r)),
    })
}

/// The closed-form description available for `a`, if any: a union of disks
/// for a real diagonal plus a nilpotent tree, or one disk for a nilpotent
/// cycle-free matrix.
pub fn closed_form(a: &QMatrix, grid: usize, tol: f64) -> Option<DiskUnion> {
    if a.has_real_diagonal() {
        let (d, rest) = a.split_real_diagonal();
        let n = QMatrix::from_fn(a.n(), |i, j| if i == j { Quaternion::ZERO } else { rest[(i, j)] });
        if is_tree(&build_graph(&n)) && n.is_nilpotent(tol) {
            if let Ok(u) = disk_union(&d, &n, grid, tol) {
                return Some(u);
            }
        }
    }
    if a.is_nilpotent(tol) && is_cycle_free(&build_graph(a)) {
        return cyclefree_disk(a, tol).ok();
    }
    None
}

pub fn is_real(a: &QMatrix) -> bool {
    a.max_pure_norm() <= a.zero_threshold()
}

pub fn real_cmatrix(a: &QMatrix) -> CMatrix {
    CMatrix::from_real(a.n(), |i, j| a[(i, j)].re())
}

pub const BOUNDARY_ANGLES: usize = 720;

#[derive(Debug, Clone, Serialize)]
pub struct BildReport {
    pub samples: usize,
    pub seed: u64,
    pub matrix_hash: String,
    pub max_modulus: f64,
    pub closed_form: Option<ClosedFormReport>,
    /// Upper half of the complex boundary, for real matrices.
    pub support_boundary: Option<Vec<(f64, f64)>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosedFormReport {
    pub centers: usize,
    pub d_lo: f64,
    pub d_hi: f64,
    pub max_radius: f64,
    pub real_extent: (f64, f64),
    pub envelope: Vec<(f64, f64)>,
}

/// Everything `bild` writes: the cloud, the summary and the overlay curves.
pub struct Bild {
    pub cloud: BildCloud,
    pub report: BildReport,
    pub envelope: Option<Vec<(f64, f64)>>,
    pub boundary: Option<Vec<(f64, f64)>>,
}

pub fn bild(a: &QMatrix, samples: usize, seed: u64, grid: usize, tol: f64) -> Result<Bild, CliError> {
    if samples == 0 {
        return Err(CliError::Input("--samples must be at least 1".into()));
    }
    let cloud = sample_bild(a, samples, seed);
    let union = closed_form(a, grid, tol);
    let envelope = union.as_ref().map(|u| u.envelope(ENVELOPE_ANGLES).points());
    let boundary = if is_real(a) && a.n() > 0 {
        Some(support_boundary(&real_cmatrix(a), BOUNDARY_ANGLES)?.points.iter().map(|z| (z.re, z.im)).collect::<Vec<_>>())
    } else {
        None
    };
    let report = BildReport {
        samples,
        seed,
        matrix_hash: format!("{:016x}", cloud.matrix_hash),
        max_modulus: cloud.max_modulus(),
        closed_form: union.as_ref().map(|u| ClosedFormReport {
            centers: u.len(),
            d_lo: u.d_lo(),
            d_hi: u.d_hi(),
            max_radius: u.max_radius(),
            real_extent: u.real_extent(),
            envelope: u.envelope(ENVELOPE_ANGLES).upper_points(),
        }),
        support_boundary: boundary.as_ref().map(|b| b.iter().map(|&(x, y)| (x, y.abs())).collect()),
    };
    Ok(Bild {
        cloud,
        report,
        envelope,
        boundary,
    })
}

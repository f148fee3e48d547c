//! Planar convex hulls (Andrew's monotone chain).

use alloc::vec::Vec;

/// Membership slack for [`Hull2D::contains`].
pub const MEMBERSHIP_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }

    pub fn norm(self) -> f64 {
        libm::hypot(self.x, self.y)
    }

    pub fn dist(self, o: Self) -> f64 {
        self.sub(o).norm()
    }
}

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

fn segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b.sub(a);
    let len2 = ab.x * ab.x + ab.y * ab.y;
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = (((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2).clamp(0.0, 1.0);
    p.dist(Point2::new(a.x + t * ab.x, a.y + t * ab.y))
}

/// Counter-clockwise hull vertices with no three collinear.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Hull2D {
    vertices: Vec<Point2>,
}

impl Hull2D {
    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Shoelace area.
    pub fn area(&self) -> f64 {
        let v = &self.vertices;
        if v.len() < 3 {
            return 0.0;
        }
        let mut s = 0.0;
        for k in 0..v.len() {
            let a = v[k];
            let b = v[(k + 1) % v.len()];
            s += a.x * b.y - a.y * b.x;
        }
        0.5 * s
    }

    fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let v = &self.vertices;
        let m = v.len();
        let count = if m == 2 { 1 } else { m };
        (0..count).map(move |k| (v[k], v[(k + 1) % m]))
    }

    /// Distance from `p` to the hull (zero inside).
    pub fn distance(&self, p: Point2) -> f64 {
        match self.vertices.len() {
            0 => f64::INFINITY,
            1 => p.dist(self.vertices[0]),
            2 => segment_distance(p, self.vertices[0], self.vertices[1]),
            _ => {
                let inside = self.edges().all(|(a, b)| cross(a, b, p) >= 0.0);
                if inside {
                    0.0
                } else {
                    self.edges().map(|(a, b)| segment_distance(p, a, b)).fold(f64::INFINITY, f64::min)
                }
            }
        }
    }

    /// `p` lies in the hull up to [`MEMBERSHIP_SLACK`].
    pub fn contains(&self, p: Point2) -> bool {
        self.distance(p) <= MEMBERSHIP_SLACK
    }
}

pub fn convex_hull_2d(points: &[Point2]) -> Hull2D {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return Hull2D { vertices: pts };
    }
    let mut lower: Vec<Point2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Hull2D { vertices: lower }
}

/// Hausdorff distance between two convex hulls. The distance to a convex
/// set is convex, so its maximum over a polygon sits at a vertex.
pub fn hausdorff(a: &Hull2D, b: &Hull2D) -> f64 {
    let one = |x: &Hull2D, y: &Hull2D| x.vertices.iter().map(|&p| y.distance(p)).fold(0.0, f64::max);
    f64::max(one(a, b), one(b, a))
}

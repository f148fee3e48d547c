//! Minimal SVG overlay of a cloud, an envelope and a support boundary.
//! Coordinates are written as given; the y axis is flipped by a transform.

use std::fmt::Write as _;

#[derive(Debug, Default, Clone)]
pub struct Overlay<'a> {
    pub cloud: &'a [(f64, f64)],
    pub envelope: Option<&'a [(f64, f64)]>,
    pub boundary: Option<&'a [(f64, f64)]>,
}

fn bounds(sets: &[&[(f64, f64)]]) -> (f64, f64, f64, f64) {
    let mut b = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in sets.iter().flat_map(|s| s.iter()) {
        b = (b.0.min(x), b.1.min(y), b.2.max(x), b.3.max(y));
    }
    if !b.0.is_finite() {
        return (-1.0, -1.0, 1.0, 1.0);
    }
    let pad = 0.05 * (b.2 - b.0).max(b.3 - b.1).max(1e-3);
    (b.0 - pad, b.1 - pad, b.2 + pad, b.3 + pad)
}

fn polyline(out: &mut String, pts: &[(f64, f64)], color: &str, width: f64) {
    out.push_str("<polyline fill=\"none\" stroke=\"");
    out.push_str(color);
    let _ = write!(out, "\" stroke-width=\"{width}\" points=\"");
    for (k, (x, y)) in pts.iter().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{x},{y}");
    }
    out.push_str("\"/>\n");
}

pub fn render(o: &Overlay) -> String {
    let mut sets = vec![o.cloud];
    sets.extend(o.envelope);
    sets.extend(o.boundary);
    let (x0, y0, x1, y1) = bounds(&sets);
    let (w, h) = (x1 - x0, y1 - y0);
    let dot = 0.002 * w.max(h);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"{}\" viewBox=\"{x0} {} {w} {h}\">",
        (800.0 * h / w).round().max(1.0),
        -y1
    );
    out.push_str("<g transform=\"scale(1,-1)\">\n");
    let _ = writeln!(
        out,
        "<line x1=\"{x0}\" y1=\"0\" x2=\"{x1}\" y2=\"0\" stroke=\"#bbbbbb\" stroke-width=\"{}\"/>",
        dot * 0.5
    );
    out.push_str("<g fill=\"#3060c0\" fill-opacity=\"0.35\">\n");
    for (x, y) in o.cloud {
        let _ = writeln!(out, "<circle cx=\"{x}\" cy=\"{y}\" r=\"{dot}\"/>");
    }
    out.push_str("</g>\n");
    if let Some(e) = o.envelope {
        polyline(&mut out, e, "#c03030", dot);
    }
    if let Some(b) = o.boundary {
        polyline(&mut out, b, "#20a040", dot);
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_pass_through() {
        let cloud = [(0.25, 0.5)];
        let env = [(-1.0, 0.0), (0.0, 1.0), (1.0, 0.0)];
        let s = render(&Overlay {
            cloud: &cloud,
            envelope: Some(&env),
            boundary: None,
        });
        assert!(s.contains("cx=\"0.25\" cy=\"0.5\""));
        assert!(s.contains("points=\"-1,0 0,1 1,0\""));
        assert!(s.starts_with("<svg") && s.trim_end().ends_with("</svg>"));
    }
}

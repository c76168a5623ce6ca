//! Planar figures: arrangement lines, tiles coloured by orbit, `V_<=(0)` outline and D-points.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::analysis::{d_points, voronoi_region};
use crate::error::{Error, Result};
use crate::exact::{to_f64, QVector};
use crate::polyhedra::VPolytope;
use crate::symmetry::AffineSymmetry;
use crate::vn::Decomposition;

/// The figure shows `[-VIEW, VIEW]^2`.
const VIEW: i64 = 2;
const SIZE: f64 = 480.0;
const SCALE: f64 = SIZE / (2.0 * VIEW as f64);
const PALETTE: [&str; 8] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
];
const TILE_STROKE: &str = "#555555";
const AHA_STROKE: &str = "#bbbbbb";
const REGION_STROKE: &str = "#000000";
const DPOINT_FILL: &str = "#d62728";

fn px(p: (f64, f64)) -> (f64, f64) {
    ((p.0 + VIEW as f64) * SCALE, (VIEW as f64 - p.1) * SCALE)
}

fn xy(v: &QVector) -> (f64, f64) {
    (to_f64(&v[0]), to_f64(&v[1]))
}

/// Vertices of a planar polygon in counter-clockwise order.
fn ordered(p: &VPolytope) -> Vec<(f64, f64)> {
    let pts: Vec<(f64, f64)> = p.vertices().iter().map(xy).collect();
    let n = pts.len() as f64;
    let c = (
        pts.iter().map(|p| p.0).sum::<f64>() / n,
        pts.iter().map(|p| p.1).sum::<f64>() / n,
    );
    let mut keyed: Vec<(f64, (f64, f64))> = pts.into_iter().map(|p| ((p.1 - c.1).atan2(p.0 - c.0), p)).collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    keyed.into_iter().map(|(_, p)| p).collect()
}

fn path(points: &[(f64, f64)], close: bool) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let (x, y) = px(*p);
        let _ = write!(d, "{}{x:.3},{y:.3} ", if i == 0 { 'M' } else { 'L' });
    }
    if close {
        d.push('Z');
    }
    d.trim_end().to_string()
}

fn meets_view(p: &VPolytope) -> bool {
    let v = VIEW as f64;
    let pts: Vec<(f64, f64)> = p.vertices().iter().map(xy).collect();
    let lo = |f: fn(&(f64, f64)) -> f64| pts.iter().map(f).fold(f64::INFINITY, f64::min);
    let hi = |f: fn(&(f64, f64)) -> f64| pts.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
    lo(|p| p.0) < v && hi(|p| p.0) > -v && lo(|p| p.1) < v && hi(|p| p.1) > -v
}

/// Images of `p` under the affine group that meet the viewport.
fn images_in_view(d: &Decomposition, p: &VPolytope) -> Vec<VPolytope> {
    let r = VIEW + 3;
    let mut out = BTreeSet::new();
    for a in d.group.elements() {
        let linear = AffineSymmetry {
            linear: a.clone(),
            shift: QVector::zeros(2),
        }
        .map_polytope(p);
        for i in -r..=r {
            for j in -r..=r {
                let g = AffineSymmetry::translation(QVector::from_ints(&[i, j]));
                let image = g.map_polytope(&linear);
                if meets_view(&image) {
                    out.insert(image);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Segment of `{x : form(x) = c}` inside the viewport, if any.
fn clip_line(a: (f64, f64), c: f64) -> Option<((f64, f64), (f64, f64))> {
    let v = VIEW as f64;
    let mut pts: Vec<(f64, f64)> = Vec::new();
    if a.1.abs() > 1e-12 {
        for x in [-v, v] {
            let y = (c - a.0 * x) / a.1;
            if (-v..=v).contains(&y) {
                pts.push((x, y));
            }
        }
    }
    if a.0.abs() > 1e-12 {
        for y in [-v, v] {
            let x = (c - a.1 * y) / a.0;
            if (-v..=v).contains(&x) {
                pts.push((x, y));
            }
        }
    }
    pts.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
    pts.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-9 && (p.1 - q.1).abs() < 1e-9);
    match pts.as_slice() {
        [p, .., q] => Some((*p, *q)),
        _ => None,
    }
}

/// Boundary edges of a union of face-to-face polygons: edges used by exactly one piece.
fn outline(pieces: &[VPolytope]) -> Vec<((f64, f64), (f64, f64))> {
    let mut count: BTreeMap<(QVector, QVector), usize> = BTreeMap::new();
    for p in pieces {
        let fs = crate::polyhedra::facets(p).expect("planar tile");
        for f in fs {
            let mut e: Vec<QVector> = f.vertices.iter().map(|&i| p.vertices()[i].clone()).collect();
            e.sort();
            *count.entry((e[0].clone(), e[e.len() - 1].clone())).or_default() += 1;
        }
    }
    count
        .into_iter()
        .filter(|(_, c)| *c == 1)
        .map(|((a, b), _)| (xy(&a), xy(&b)))
        .collect()
}

/// Deterministic SVG of a planar decomposition.
pub fn render(d: &Decomposition) -> Result<String> {
    if d.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: d.dim(),
        });
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);

    out.push_str("<g id=\"tiles\">\n");
    for (i, orbit) in d.orbits.iter().enumerate() {
        let fill = PALETTE[i % PALETTE.len()];
        for image in images_in_view(d, &orbit.rep.polytope) {
            let _ = writeln!(
                out,
                r#"<path d="{}" fill="{fill}" stroke="{TILE_STROKE}" stroke-width="0.5"/>"#,
                path(&ordered(&image), true)
            );
        }
    }
    out.push_str("</g>\n<g id=\"arrangement\">\n");
    for class in d.aha.classes() {
        let a = (to_f64(&class.form.coeffs()[0]), to_f64(&class.form.coeffs()[1]));
        let reach = (a.0.abs() + a.1.abs()) * VIEW as f64;
        let kmax = (reach / to_f64(&class.step)).ceil() as i64;
        for k in -kmax..=kmax {
            let c = k as f64 * to_f64(&class.step);
            if let Some((p, q)) = clip_line(a, c) {
                let _ = writeln!(
                    out,
                    r#"<path d="{}" stroke="{AHA_STROKE}" stroke-width="0.5" stroke-dasharray="3,3" fill="none"/>"#,
                    path(&[p, q], false)
                );
            }
        }
    }
    out.push_str("</g>\n<g id=\"region\">\n");
    let region = voronoi_region(d, &QVector::zeros(2), true);
    let pieces: Vec<VPolytope> = region.pieces.iter().map(|p| p.polytope.clone()).collect();
    for (p, q) in outline(&pieces) {
        let _ = writeln!(
            out,
            r#"<path d="{}" stroke="{REGION_STROKE}" stroke-width="2" fill="none"/>"#,
            path(&[p, q], false)
        );
    }
    out.push_str("</g>\n<g id=\"d-points\">\n");
    let dp = d_points(d)?;
    for piece in dp.expand(d, VIEW) {
        let pts = ordered(&piece);
        match piece.affine_dim() {
            Some(0) => {
                let (x, y) = px(pts[0]);
                let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="{DPOINT_FILL}"/>"#);
            }
            Some(1) => {
                let _ = writeln!(
                    out,
                    r#"<path d="{}" stroke="{DPOINT_FILL}" stroke-width="3" fill="none"/>"#,
                    path(&pts, false)
                );
            }
            _ => {
                let _ = writeln!(
                    out,
                    r#"<path d="{}" fill="{DPOINT_FILL}" fill-opacity="0.5"/>"#,
                    path(&pts, true)
                );
            }
        }
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Strategy;
    use crate::norm::PolyhedralNorm;
    use crate::vn::decompose;

    #[test]
    fn deterministic_and_complete() {
        let d = decompose(&PolyhedralNorm::l_infinity(2), Strategy::Auto, 3).unwrap();
        let a = render(&d).unwrap();
        let b = render(&decompose(&PolyhedralNorm::l_infinity(2), Strategy::Auto, 3).unwrap()).unwrap();
        assert_eq!(a, b);
        for id in ["tiles", "arrangement", "region", "d-points"] {
            assert!(a.contains(&format!("id=\"{id}\"")));
        }
        // cells around (i, j), |i|,|j| <= 2: inner ones keep 4 triangles, edge cells 3, corner cells 2
        assert_eq!(a.matches("fill=\"#8dd3c7\"").count(), 9 * 4 + 12 * 3 + 4 * 2);
        assert_eq!(a.matches("stroke-width=\"2\"").count(), 4);
    }

    #[test]
    fn rejects_space() {
        let d = decompose(&PolyhedralNorm::l1(3), Strategy::Auto, 3).unwrap();
        assert!(render(&d).is_err());
    }
}

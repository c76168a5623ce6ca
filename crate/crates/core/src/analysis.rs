//! Covering radius, Voronoi regions, D-points and Voronoi vertices of a decomposition.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exact::{LinearForm, QVector, Rational};
use crate::lattice::{euclidean_voronoi, LatticeBasis};
use crate::linalg;
use crate::polyhedra::{volume, VPolytope};
use crate::symmetry::AffineSymmetry;
use crate::vn::Decomposition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringRadius {
    pub value: Rational,
    /// A deepest point, reduced into `[0, 1)^n`.
    pub witness: QVector,
}

/// Maximum of `alpha` over the vertices of every representative.
pub fn covering_radius(d: &Decomposition) -> CoveringRadius {
    let mut best: Option<(Rational, QVector)> = None;
    for orbit in &d.orbits {
        for u in orbit.rep.polytope.vertices() {
            let a = orbit.rep.alpha_at(u);
            let w = u.reduce_mod_lattice();
            let better = match &best {
                None => true,
                Some((b, bw)) => a > *b || (a == *b && w < *bw),
            };
            if better {
                best = Some((a, w));
            }
        }
    }
    let (value, witness) = best.expect("decomposition has vertices");
    CoveringRadius { value, witness }
}

/// One tile `symmetry(rep(orbit))` of a region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub orbit: usize,
    pub symmetry: AffineSymmetry,
    pub polytope: VPolytope,
    pub near: Vec<QVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoronoiRegion {
    pub center: QVector,
    pub closed: bool,
    pub pieces: Vec<Piece>,
}

impl VoronoiRegion {
    pub fn volume(&self, d: &Decomposition) -> Rational {
        self.pieces.iter().map(|p| d.orbits[p.orbit].tvol.clone()).sum()
    }

    /// Convex hull of all piece vertices.
    pub fn hull(&self) -> Result<VPolytope> {
        let n = self.center.dim();
        let points: BTreeSet<QVector> = self
            .pieces
            .iter()
            .flat_map(|p| p.polytope.vertices().iter().cloned())
            .collect();
        VPolytope::hull(n, points.into_iter().collect())
    }

    /// Whether the union of pieces is convex, i.e. fills its hull.
    pub fn is_convex(&self, d: &Decomposition) -> Result<bool> {
        let hull = self.hull()?;
        Ok(volume(&hull)?.value == self.volume(d))
    }
}

/// `V_<=(v)` (closed) or `V_<(v)` pieces: tiles whose Near set contains `v` or equals `{v}`.
pub fn voronoi_region(d: &Decomposition, v: &QVector, closed: bool) -> VoronoiRegion {
    let mut seen = BTreeSet::new();
    let mut pieces = Vec::new();
    for (j, orbit) in d.orbits.iter().enumerate() {
        if !closed && orbit.rep.near.len() != 1 {
            continue;
        }
        for a in d.group.elements() {
            for w in &orbit.rep.near {
                let g = AffineSymmetry {
                    linear: a.clone(),
                    shift: v - &a.apply(w),
                };
                let polytope = g.map_polytope(&orbit.rep.polytope);
                if !seen.insert(polytope.clone()) {
                    continue;
                }
                let mut near: Vec<QVector> = orbit.rep.near.iter().map(|u| g.apply(u)).collect();
                near.sort();
                pieces.push(Piece {
                    orbit: j,
                    symmetry: g,
                    polytope,
                    near,
                });
            }
        }
    }
    pieces.sort_by(|a, b| a.polytope.vertices().cmp(b.polytope.vertices()));
    VoronoiRegion {
        center: v.clone(),
        closed,
        pieces,
    }
}

/// Every facet link must glue whole facets.
fn require_face_to_face(d: &Decomposition) -> Result<()> {
    let id = AffineSymmetry::identity(d.dim());
    for (i, orbit) in d.orbits.iter().enumerate() {
        for f in 0..orbit.rep.facets.len() {
            let (j, g) = d.neighbour_of(i, &id, f);
            let neighbour = d.orbits[j].rep.image(&g, &d.aha);
            if neighbour.facet_with_vertices(&orbit.rep.facet_vertices(f)).is_none() {
                return Err(Error::NotFaceToFace(format!("orbit {i}, facet {f}")));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPointSet {
    /// Per representative, the hull of its D-point vertices.
    pub pieces: Vec<VPolytope>,
    pub dimension: usize,
}

impl DPointSet {
    /// Images of the pieces under the symmetry group that meet the box `[-r, r]^n`.
    pub fn expand(&self, d: &Decomposition, r: i64) -> Vec<VPolytope> {
        let n = d.dim();
        let lo = QVector(vec![Rational::from_integer((-r).into()); n]);
        let hi = QVector(vec![Rational::from_integer(r.into()); n]);
        let shifts = crate::lattice_enum::box_points(&vec![(-r - 1).into(); n], &vec![(r + 1).into(); n]);
        let mut out = BTreeSet::new();
        for piece in &self.pieces {
            for a in d.group.elements() {
                for t in &shifts {
                    let g = AffineSymmetry {
                        linear: a.clone(),
                        shift: t.clone(),
                    };
                    let image = g.map_polytope(piece);
                    let inside = image
                        .vertices()
                        .iter()
                        .any(|v| (0..n).all(|c| v[c] >= lo[c] && v[c] <= hi[c]));
                    if inside {
                        out.insert(image.vertices().to_vec());
                    }
                }
            }
        }
        out.into_iter()
            .map(|v| VPolytope::new(n, v).expect("dimension"))
            .collect()
    }
}

/// Vertices maximizing `alpha` in every incident tile, grouped per representative.
pub fn d_points(d: &Decomposition) -> Result<DPointSet> {
    require_face_to_face(d)?;
    let max_alpha: Vec<Rational> = d
        .orbits
        .iter()
        .map(|o| {
            o.rep
                .polytope
                .vertices()
                .iter()
                .map(|u| o.rep.alpha_at(u))
                .max()
                .expect("vertices")
        })
        .collect();
    let mut pieces = Vec::new();
    let mut dimension = 0;
    for orbit in &d.orbits {
        let mut good = Vec::new();
        for x in orbit.rep.polytope.vertices() {
            let dist = orbit.rep.alpha_at(x);
            if d.images_containing(x).iter().all(|(j, _)| dist == max_alpha[*j]) {
                good.push(x.clone());
            }
        }
        if good.is_empty() {
            continue;
        }
        let piece = VPolytope::hull(d.dim(), good)?;
        dimension = dimension.max(piece.affine_dim().unwrap_or(0));
        pieces.push(piece);
    }
    Ok(DPointSet { pieces, dimension })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexReport {
    /// Vertices by the REAL-wall criterion: walls between tiles with different Near sets.
    pub vertices: Vec<QVector>,
    /// Vertices by exterior walls only: walls whose other side is outside the region.
    pub exterior_vertices: Vec<QVector>,
}

impl VertexReport {
    pub fn readings_agree(&self) -> bool {
        self.vertices == self.exterior_vertices
    }
}

/// Vertices of the closed Voronoi region of `v`.
pub fn voronoi_vertices(d: &Decomposition, v: &QVector) -> Result<VertexReport> {
    require_face_to_face(d)?;
    let n = d.dim();
    let region = voronoi_region(d, v, true);
    let members: BTreeSet<&VPolytope> = region.pieces.iter().map(|p| &p.polytope).collect();
    let mut real: BTreeMap<QVector, Vec<LinearForm>> = BTreeMap::new();
    let mut exterior: BTreeMap<QVector, Vec<LinearForm>> = BTreeMap::new();
    for piece in &region.pieces {
        let rep = &d.orbits[piece.orbit].rep;
        let inv = piece.symmetry.linear.inverse().expect("unimodular");
        for f in 0..rep.facets.len() {
            let (k, h) = d.neighbour_of(piece.orbit, &piece.symmetry, f);
            let other = &d.orbits[k].rep;
            let mut other_near: Vec<QVector> = other.near.iter().map(|u| h.apply(u)).collect();
            other_near.sort();
            let other_poly = h.map_polytope(&other.polytope);
            let normal = rep.facets[f].normal.compose(&inv);
            let is_real = other_near != piece.near;
            let is_exterior = !members.contains(&other_poly);
            for u in rep.facet_vertices(f) {
                let x = piece.symmetry.apply(&u);
                real.entry(x.clone()).or_default();
                exterior.entry(x.clone()).or_default();
                if is_real {
                    real.get_mut(&x).expect("inserted").push(normal.clone());
                }
                if is_exterior {
                    exterior.get_mut(&x).expect("inserted").push(normal.clone());
                }
            }
        }
    }
    let full_rank = |m: BTreeMap<QVector, Vec<LinearForm>>| -> Vec<QVector> {
        m.into_iter()
            .filter(|(_, normals)| {
                let rows: Vec<Vec<Rational>> = normals.iter().map(|f| f.coeffs().to_vec()).collect();
                linalg::rank(&rows) == n
            })
            .map(|(x, _)| x)
            .collect()
    };
    Ok(VertexReport {
        vertices: full_rank(real),
        exterior_vertices: full_rank(exterior),
    })
}

/// Comparison of `V_<=(0)` with the Euclidean Voronoi cell of a lattice basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EuclideanComparison {
    pub region_vertices: Vec<QVector>,
    pub euclidean_vertices: Vec<QVector>,
    /// The closed region is convex and its hull has the Euclidean vertices.
    pub matches_euclidean: bool,
    pub closed_volume: Rational,
    pub open_volume: Rational,
}

impl EuclideanComparison {
    pub fn closure_matches(&self) -> bool {
        self.closed_volume == self.open_volume
    }

    pub fn confirmed(&self) -> bool {
        self.matches_euclidean && self.closure_matches()
    }
}

/// `d` must be the decomposition of a norm pulled back through `basis`.
pub fn euclidean_comparison(d: &Decomposition, basis: &LatticeBasis) -> Result<EuclideanComparison> {
    let origin = QVector::zeros(d.dim());
    let closed = voronoi_region(d, &origin, true);
    let open = voronoi_region(d, &origin, false);
    let hull = closed.hull()?;
    let euclidean = euclidean_voronoi(basis)?;
    let closed_volume = closed.volume(d);
    let matches_euclidean = hull.vertices() == euclidean.vertices() && volume(&hull)?.value == closed_volume;
    Ok(EuclideanComparison {
        region_vertices: hull.vertices().to_vec(),
        euclidean_vertices: euclidean.vertices().to_vec(),
        matches_euclidean,
        closed_volume,
        open_volume: open.volume(d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Strategy;
    use crate::exact::{int, rat};
    use crate::lattice::{an_basis, pullback_norm};
    use crate::lattice_enum::d_min;
    use crate::norm::PolyhedralNorm;
    use crate::vn::decompose;

    fn corners(n: usize) -> Vec<QVector> {
        let mut out = Vec::new();
        for mask in 0..1u32 << n {
            out.push(QVector(
                (0..n)
                    .map(|i| if mask >> i & 1 == 1 { rat(1, 2) } else { rat(-1, 2) })
                    .collect(),
            ));
        }
        out.sort();
        out
    }

    #[test]
    fn covering_radius_examples() {
        let cases = [
            (PolyhedralNorm::l_infinity(2), rat(1, 2)),
            (PolyhedralNorm::l1(2), int(1)),
            (PolyhedralNorm::l1(3), rat(3, 2)),
        ];
        for (norm, value) in cases {
            let d = decompose(&norm, Strategy::Auto, 5).unwrap();
            let cov = covering_radius(&d);
            assert_eq!(cov.value, value);
            assert_eq!(cov.witness, QVector(vec![rat(1, 2); norm.dim()]));
            assert_eq!(d_min(&cov.witness, &norm).unwrap(), value);
        }
    }

    #[test]
    fn regions_are_cubes() {
        for norm in [
            PolyhedralNorm::l_infinity(2),
            PolyhedralNorm::l1(2),
            PolyhedralNorm::l1(1),
        ] {
            let n = norm.dim();
            let d = decompose(&norm, Strategy::Auto, 5).unwrap();
            let region = voronoi_region(&d, &QVector::zeros(n), true);
            assert_eq!(region.pieces.len(), if n == 1 { 2 } else { 4 });
            assert_eq!(region.hull().unwrap().vertices(), &corners(n)[..]);
            assert!(region.is_convex(&d).unwrap());
            assert_eq!(region.volume(&d), int(1));
        }
    }

    #[test]
    fn region_translation_equivariance() {
        let d = decompose(&PolyhedralNorm::l_infinity(2), Strategy::Auto, 5).unwrap();
        let t = QVector::from_ints(&[3, -2]);
        let at_zero = voronoi_region(&d, &QVector::zeros(2), true);
        let moved = voronoi_region(&d, &t, true);
        let shifted: BTreeSet<VPolytope> = at_zero
            .pieces
            .iter()
            .map(|p| AffineSymmetry::translation(t.clone()).map_polytope(&p.polytope))
            .collect();
        let direct: BTreeSet<VPolytope> = moved.pieces.iter().map(|p| p.polytope.clone()).collect();
        assert_eq!(shifted, direct);
    }

    #[test]
    fn d_point_dimensions() {
        let linf = decompose(&PolyhedralNorm::l_infinity(2), Strategy::Auto, 5).unwrap();
        assert_eq!(d_points(&linf).unwrap().dimension, 1);
        let l1 = decompose(&PolyhedralNorm::l1(2), Strategy::Auto, 5).unwrap();
        let dp = d_points(&l1).unwrap();
        assert_eq!(dp.dimension, 0);
        assert_eq!(dp.pieces[0].vertices(), &[QVector(vec![rat(1, 2), rat(1, 2)])]);
        let z1 = decompose(&PolyhedralNorm::l1(1), Strategy::Auto, 5).unwrap();
        let dp = d_points(&z1).unwrap();
        assert_eq!(dp.dimension, 0);
        assert_eq!(dp.pieces[0].vertices(), &[QVector(vec![rat(1, 2)])]);
    }

    #[test]
    fn vertex_examples() {
        for norm in [
            PolyhedralNorm::l1(2),
            PolyhedralNorm::l_infinity(2),
            PolyhedralNorm::l_infinity(1),
        ] {
            let n = norm.dim();
            let d = decompose(&norm, Strategy::Auto, 5).unwrap();
            let report = voronoi_vertices(&d, &QVector::zeros(n)).unwrap();
            assert_eq!(report.vertices, corners(n));
            assert!(report.readings_agree());
        }
    }

    #[test]
    fn hexagonal_lattice_matches_euclidean() {
        let basis = an_basis(2).unwrap();
        for ambient in [PolyhedralNorm::l1(3), PolyhedralNorm::l_infinity(3)] {
            let norm = pullback_norm(&ambient, &basis).unwrap();
            let d = decompose(&norm, Strategy::Auto, 2).unwrap();
            let check = euclidean_comparison(&d, &basis).unwrap();
            assert_eq!(check.region_vertices.len(), 6);
            assert!(check.confirmed(), "{check:?}");
        }
    }
}

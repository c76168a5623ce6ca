//! Exact convex polyhedra: H- and V-descriptions, classification, facets and volume.

mod bitset;
mod dd;
pub mod lp;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{LinearForm, QVector, Rational};
use crate::linalg;
use lp::LpOutcome;

/// The half-space `normal(x) <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Inequality {
    pub normal: LinearForm,
    pub rhs: Rational,
}

impl Inequality {
    pub fn new(normal: LinearForm, rhs: Rational) -> Self {
        Inequality { normal, rhs }
    }

    pub fn slack(&self, x: &QVector) -> Rational {
        &self.rhs - self.normal.apply(x)
    }

    pub fn holds(&self, x: &QVector) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn is_tight(&self, x: &QVector) -> bool {
        self.slack(x).is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Empty,
    LowerDim(usize),
    Unbounded,
    BoundedFullDim,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolyhedron {
    dim: usize,
    inequalities: Vec<Inequality>,
}

impl HPolyhedron {
    pub fn new(dim: usize, inequalities: Vec<Inequality>) -> Result<Self> {
        if let Some(bad) = inequalities.iter().find(|i| i.normal.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.normal.dim(),
            });
        }
        Ok(HPolyhedron { dim, inequalities })
    }

    /// The axis-parallel box `lo <= x <= hi`.
    pub fn bounding_box(lo: &QVector, hi: &QVector) -> Self {
        let dim = lo.dim();
        let mut ineqs = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let e = LinearForm::coordinate(dim, i);
            ineqs.push(Inequality::new(e.clone(), hi[i].clone()));
            ineqs.push(Inequality::new(e.neg(), -&lo[i]));
        }
        HPolyhedron {
            dim,
            inequalities: ineqs,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn push(&mut self, inequality: Inequality) {
        debug_assert_eq!(inequality.normal.dim(), self.dim);
        self.inequalities.push(inequality);
    }

    pub fn intersect(&self, other: &HPolyhedron) -> HPolyhedron {
        let mut inequalities = self.inequalities.clone();
        inequalities.extend(other.inequalities.iter().cloned());
        HPolyhedron {
            dim: self.dim,
            inequalities,
        }
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.inequalities.iter().all(|i| i.holds(x))
    }

    /// Strictly inside every listed half-space.
    pub fn strictly_contains(&self, x: &QVector) -> bool {
        self.inequalities.iter().all(|i| i.slack(x).is_positive())
    }

    pub fn maximize(&self, objective: &LinearForm) -> LpOutcome {
        lp::maximize(self.dim, &self.inequalities, objective)
    }

    pub fn classify(&self) -> Classification {
        let n = self.dim;
        let mut rows = Vec::with_capacity(self.inequalities.len() + 1);
        for ineq in &self.inequalities {
            if ineq.normal.is_zero() {
                if ineq.rhs.is_negative() {
                    return Classification::Empty;
                }
                continue;
            }
            let mut coeffs = ineq.normal.coeffs().to_vec();
            coeffs.push(Rational::one());
            rows.push(Inequality::new(LinearForm(coeffs), ineq.rhs.clone()));
        }
        let mut cap = vec![Rational::zero(); n + 1];
        cap[n] = Rational::one();
        rows.push(Inequality::new(LinearForm(cap.clone()), Rational::one()));

        let best = match lp::maximize(n + 1, &rows, &LinearForm(cap)) {
            LpOutcome::Optimal { value, .. } => value,
            _ => unreachable!("the slack program is feasible and capped"),
        };
        if best.is_negative() {
            return Classification::Empty;
        }
        if best.is_zero() {
            // Implicit equalities determine the affine hull.
            let mut equalities = Vec::new();
            for ineq in self.inequalities.iter().filter(|i| !i.normal.is_zero()) {
                if let LpOutcome::Optimal { value, .. } = self.maximize(&ineq.normal.neg()) {
                    if value == -&ineq.rhs {
                        equalities.push(ineq.normal.coeffs().to_vec());
                    }
                }
            }
            return Classification::LowerDim(n - linalg::rank(&equalities));
        }
        for j in 0..n {
            let e = LinearForm::coordinate(n, j);
            for objective in [e.clone(), e.neg()] {
                if let LpOutcome::Unbounded { .. } = self.maximize(&objective) {
                    return Classification::Unbounded;
                }
            }
        }
        Classification::BoundedFullDim
    }

    /// Extreme points of a bounded polyhedron (empty list when infeasible).
    pub fn dual_description(&self) -> Result<VPolytope> {
        match dd::enumerate(self.dim, &self.inequalities) {
            dd::ConeOutput::Lineality { direction } => {
                if lp::feasible_point(self.dim, &self.inequalities).is_none() {
                    Ok(VPolytope::empty(self.dim))
                } else {
                    Err(Error::Unbounded { ray: direction })
                }
            }
            dd::ConeOutput::Pointed {
                vertices,
                mut recession,
            } => {
                if vertices.is_empty() || recession.is_empty() {
                    Ok(VPolytope {
                        dim: self.dim,
                        vertices,
                    })
                } else {
                    Err(Error::Unbounded {
                        ray: recession.swap_remove(0),
                    })
                }
            }
        }
    }
}

/// A polytope given by its extreme points, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<QVector>,
}

impl VPolytope {
    /// The points must be the extreme points of their hull; order is irrelevant.
    pub fn new(dim: usize, mut vertices: Vec<QVector>) -> Result<Self> {
        if let Some(bad) = vertices.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        vertices.sort();
        vertices.dedup();
        Ok(VPolytope { dim, vertices })
    }

    pub fn empty(dim: usize) -> Self {
        VPolytope {
            dim,
            vertices: Vec::new(),
        }
    }

    /// Convex hull of arbitrary points, dropping non-extreme ones.
    pub fn hull(dim: usize, points: Vec<QVector>) -> Result<Self> {
        let all = VPolytope::new(dim, points)?;
        if all.vertices.len() > 2 * dim + 2 && all.affine_dim() == Some(dim) {
            return Ok(all.hull_by_facets());
        }
        let mut points = all.vertices;
        let mut i = 0;
        while i < points.len() {
            let others: Vec<QVector> = points
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p.clone())
                .collect();
            if in_convex_hull(&points[i], &others) {
                points.remove(i);
            } else {
                i += 1;
            }
        }
        Ok(VPolytope { dim, vertices: points })
    }

    /// Full-dimensional case: a point is extreme iff its tight facet normals have rank `dim`.
    fn hull_by_facets(self) -> Self {
        let fs = facets(&self).expect("full-dimensional");
        let mut tight: Vec<Vec<Vec<Rational>>> = vec![Vec::new(); self.vertices.len()];
        for f in &fs {
            for &i in &f.vertices {
                tight[i].push(f.normal.coeffs().to_vec());
            }
        }
        let vertices = self
            .vertices
            .into_iter()
            .zip(tight)
            .filter(|(_, rows)| linalg::rank(rows) == self.dim)
            .map(|(v, _)| v)
            .collect();
        VPolytope {
            dim: self.dim,
            vertices,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn isobarycenter(&self) -> Result<QVector> {
        if self.vertices.is_empty() {
            return Err(Error::Empty("polytope has no vertices"));
        }
        let mut sum = QVector::zeros(self.dim);
        for v in &self.vertices {
            sum = &sum + v;
        }
        Ok(sum.scale(&Rational::new(1.into(), self.vertices.len().into())))
    }

    /// Dimension of the affine hull, or `None` for the empty polytope.
    pub fn affine_dim(&self) -> Option<usize> {
        let idx: Vec<usize> = (0..self.vertices.len()).collect();
        affine_rank(&self.vertices, &idx)
    }
}

/// Affine dimension of the points selected by `idx`.
pub fn affine_rank(points: &[QVector], idx: &[usize]) -> Option<usize> {
    let (&first, rest) = idx.split_first()?;
    let rows: Vec<Vec<Rational>> = rest.iter().map(|&i| (&points[i] - &points[first]).0).collect();
    Some(linalg::rank(&rows))
}

fn in_convex_hull(x: &QVector, points: &[QVector]) -> bool {
    if points.is_empty() {
        return false;
    }
    let k = points.len();
    let mut rows = Vec::new();
    for j in 0..k {
        rows.push(Inequality::new(LinearForm::coordinate(k, j).neg(), Rational::zero()));
    }
    let ones = LinearForm(vec![Rational::one(); k]);
    rows.push(Inequality::new(ones.clone(), Rational::one()));
    rows.push(Inequality::new(ones.neg(), -Rational::one()));
    for c in 0..x.dim() {
        let form = LinearForm(points.iter().map(|p| p[c].clone()).collect());
        rows.push(Inequality::new(form.clone(), x[c].clone()));
        rows.push(Inequality::new(form.neg(), -&x[c]));
    }
    lp::feasible_point(k, &rows).is_some()
}

/// A facet `normal(x) <= rhs` with primitive integer normal and incident vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: LinearForm,
    pub rhs: Rational,
    pub vertices: Vec<usize>,
}

impl Facet {
    pub fn inequality(&self) -> Inequality {
        Inequality::new(self.normal.clone(), self.rhs.clone())
    }
}

fn primitive_facet(normal: &LinearForm, point: &QVector, vertices: Vec<usize>) -> Facet {
    let normal = LinearForm::from_bigints(&normal.primitive_integer());
    let rhs = normal.apply(point);
    Facet { normal, rhs, vertices }
}

/// Facets of a full-dimensional polytope from a known valid H-description.
pub fn facets_from_inequalities(p: &VPolytope, inequalities: &[Inequality]) -> Vec<Facet> {
    let n = p.dim;
    let mut out: Vec<Facet> = Vec::new();
    for ineq in inequalities {
        if ineq.normal.is_zero() {
            continue;
        }
        let tight: Vec<usize> = (0..p.vertices.len())
            .filter(|&i| ineq.is_tight(&p.vertices[i]))
            .collect();
        if tight.len() < n || affine_rank(&p.vertices, &tight) != Some(n - 1) {
            continue;
        }
        let facet = primitive_facet(&ineq.normal, &p.vertices[tight[0]], tight);
        if !out.iter().any(|f| f.normal == facet.normal) {
            out.push(facet);
        }
    }
    out.sort_by(|a, b| a.normal.cmp(&b.normal));
    out
}

/// Facets of a full-dimensional polytope, via the polar about its isobarycenter.
pub fn facets(p: &VPolytope) -> Result<Vec<Facet>> {
    let n = p.dim;
    if p.affine_dim() != Some(n) {
        return Err(Error::LowerDimensional);
    }
    let c = p.isobarycenter()?;
    let polar: Vec<Inequality> = p
        .vertices
        .iter()
        .map(|u| Inequality::new(LinearForm((u - &c).0), Rational::one()))
        .collect();
    let polar = HPolyhedron::new(n, polar)?.dual_description()?;
    let normals: Vec<Inequality> = polar
        .vertices
        .iter()
        .map(|y| {
            let form = LinearForm(y.0.clone());
            let rhs = Rational::one() + form.apply(&c);
            Inequality::new(form, rhs)
        })
        .collect();
    Ok(facets_from_inequalities(p, &normals))
}

/// Volume of a polytope; `lower_dimensional` flags a degenerate input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Volume {
    pub value: Rational,
    pub lower_dimensional: bool,
}

pub fn volume(p: &VPolytope) -> Result<Volume> {
    if p.affine_dim() != Some(p.dim) {
        return Ok(Volume {
            value: Rational::zero(),
            lower_dimensional: true,
        });
    }
    let f = facets(p)?;
    Ok(Volume {
        value: volume_with_facets(p, &f),
        lower_dimensional: false,
    })
}

/// Exact volume of a full-dimensional polytope with known facets.
pub fn volume_with_facets(p: &VPolytope, facets: &[Facet]) -> Rational {
    let n = p.dim;
    let faces: Vec<Vec<usize>> = facets.iter().map(|f| f.vertices.clone()).collect();
    let all: Vec<usize> = (0..p.vertices.len()).collect();
    let mut simplices = Vec::new();
    triangulate(&p.vertices, &faces, &all, n, &mut simplices);
    let mut factorial = Rational::one();
    for k in 2..=n {
        factorial *= Rational::from_integer(k.into());
    }
    let mut total = Rational::zero();
    for s in simplices {
        let rows: Vec<Vec<Rational>> = s[1..].iter().map(|&i| (&p.vertices[i] - &p.vertices[s[0]]).0).collect();
        total += linalg::determinant(rows).abs();
    }
    total / factorial
}

/// Pulling triangulation: cone from the lowest vertex over the faces avoiding it.
fn triangulate(points: &[QVector], facets: &[Vec<usize>], face: &[usize], k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 0 {
        out.push(vec![face[0]]);
        return;
    }
    let apex = face[0];
    let mut subfaces: Vec<Vec<usize>> = Vec::new();
    for f in facets {
        let sub: Vec<usize> = face.iter().copied().filter(|i| f.binary_search(i).is_ok()).collect();
        if sub.len() < k || sub.len() == face.len() || sub.contains(&apex) || subfaces.contains(&sub) {
            continue;
        }
        if affine_rank(points, &sub) == Some(k - 1) {
            subfaces.push(sub);
        }
    }
    for sub in subfaces {
        let mut inner = Vec::new();
        triangulate(points, facets, &sub, k - 1, &mut inner);
        for mut s in inner {
            s.insert(0, apex);
            out.push(s);
        }
    }
}

/// Extreme points of the convex hull of a finite set of forms.
pub fn extreme_forms(forms: &[LinearForm]) -> Vec<LinearForm> {
    let mut unique: Vec<LinearForm> = forms.to_vec();
    unique.sort();
    unique.dedup();
    let points: Vec<QVector> = unique.iter().map(|f| f.as_vector()).collect();
    let keep: Vec<bool> = (0..points.len())
        .map(|i| {
            let others: Vec<QVector> = points
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p.clone())
                .collect();
            !in_convex_hull(&points[i], &others)
        })
        .collect();
    unique
        .into_iter()
        .zip(keep)
        .filter_map(|(f, k)| k.then_some(f))
        .collect()
}

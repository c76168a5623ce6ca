//! Point groups of polyhedral norms and the affine action on polytopes.

use std::collections::{BTreeSet, VecDeque};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, LinearForm, QVector, Rational};
use crate::linalg;
use crate::norm::PolyhedralNorm;
use crate::polyhedra::VPolytope;

/// The map `x -> linear * x + shift`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineSymmetry {
    pub linear: IntMatrix,
    pub shift: QVector,
}

impl AffineSymmetry {
    pub fn identity(n: usize) -> Self {
        AffineSymmetry {
            linear: IntMatrix::identity(n),
            shift: QVector::zeros(n),
        }
    }

    pub fn translation(shift: QVector) -> Self {
        AffineSymmetry {
            linear: IntMatrix::identity(shift.dim()),
            shift,
        }
    }

    pub fn apply(&self, x: &QVector) -> QVector {
        &self.linear.apply(x) + &self.shift
    }

    /// `self after other`.
    pub fn compose(&self, other: &AffineSymmetry) -> AffineSymmetry {
        AffineSymmetry {
            linear: self.linear.mul(&other.linear),
            shift: self.apply(&other.shift),
        }
    }

    pub fn inverse(&self) -> AffineSymmetry {
        let linear = self.linear.inverse().expect("symmetries are unimodular");
        let shift = -&linear.apply(&self.shift);
        AffineSymmetry { linear, shift }
    }

    /// Transports a form on the source so that `form'(g x) = form(x)` for linear parts.
    pub fn transport_form(&self, form: &LinearForm) -> LinearForm {
        form.compose(&self.linear.inverse().expect("symmetries are unimodular"))
    }

    pub fn map_polytope(&self, p: &VPolytope) -> VPolytope {
        let vertices = p.vertices().iter().map(|v| self.apply(v)).collect();
        VPolytope::new(p.dim(), vertices).expect("dimension preserved")
    }
}

/// Whether `{l o A}` equals the form set of `norm`.
pub fn preserves(norm: &PolyhedralNorm, a: &IntMatrix) -> bool {
    if !a.is_unimodular() {
        return false;
    }
    let mut images: Vec<LinearForm> = norm.forms().iter().map(|f| f.compose(a)).collect();
    images.sort();
    images == norm.forms()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointGroup {
    elements: Vec<IntMatrix>,
    generators: Vec<IntMatrix>,
}

impl PointGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Identity first, the rest sorted.
    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    /// Closure of user-supplied generators, each checked against the norm.
    pub fn from_generators(norm: &PolyhedralNorm, generators: Vec<IntMatrix>) -> Result<Self> {
        for g in &generators {
            if g.dim() != norm.dim() {
                return Err(Error::DimensionMismatch {
                    expected: norm.dim(),
                    found: g.dim(),
                });
            }
            if !preserves(norm, g) {
                return Err(Error::InvalidSymmetry(format!("{g} does not permute the forms")));
            }
        }
        let elements = identity_first(norm.dim(), closure(norm.dim(), &generators).into_iter().collect());
        Ok(PointGroup { elements, generators })
    }

    fn from_elements(n: usize, mut elements: Vec<IntMatrix>) -> Self {
        elements.sort();
        elements.dedup();
        let mut generators = Vec::new();
        let mut reached = closure(n, &generators);
        for e in &elements {
            if !reached.contains(e) {
                generators.push(e.clone());
                reached = closure(n, &generators);
            }
        }
        PointGroup {
            elements: identity_first(n, elements),
            generators,
        }
    }
}

fn identity_first(n: usize, mut elements: Vec<IntMatrix>) -> Vec<IntMatrix> {
    let id = IntMatrix::identity(n);
    elements.retain(|e| *e != id);
    elements.insert(0, id);
    elements
}

fn closure(n: usize, generators: &[IntMatrix]) -> BTreeSet<IntMatrix> {
    let mut seen = BTreeSet::new();
    let id = IntMatrix::identity(n);
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = g.mul(s);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen
}

/// All `A` in `GL_n(Z)` permuting the forms, by backtracking over images of a basis of forms.
pub fn point_group(norm: &PolyhedralNorm) -> PointGroup {
    let n = norm.dim();
    let forms = norm.forms();
    let m = forms.len();
    let mut adjacent = vec![vec![false; m]; m];
    for (i, j) in norm.adjacent_forms() {
        adjacent[i][j] = true;
        adjacent[j][i] = true;
    }
    let degree: Vec<usize> = adjacent.iter().map(|r| r.iter().filter(|&&a| a).count()).collect();

    // Basis of forms in breadth-first order of the edge graph.
    let mut order = Vec::with_capacity(m);
    let mut visited = vec![false; m];
    for start in 0..m {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            order.push(i);
            for j in 0..m {
                if adjacent[i][j] && !visited[j] {
                    visited[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    let mut basis: Vec<usize> = Vec::with_capacity(n);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for i in order {
        let mut trial = rows.clone();
        trial.push(forms[i].coeffs().to_vec());
        if linalg::rank(&trial) == trial.len() {
            rows = trial;
            basis.push(i);
            if basis.len() == n {
                break;
            }
        }
    }
    let b_inv = linalg::inverse(&rows).expect("forms span the dual");

    let mut found = Vec::new();
    let mut images: Vec<usize> = Vec::with_capacity(n);
    search(norm, &basis, &b_inv, &adjacent, &degree, &mut images, &mut found);
    PointGroup::from_elements(n, found)
}

fn search(
    norm: &PolyhedralNorm,
    basis: &[usize],
    b_inv: &[Vec<Rational>],
    adjacent: &[Vec<bool>],
    degree: &[usize],
    images: &mut Vec<usize>,
    found: &mut Vec<IntMatrix>,
) {
    let k = images.len();
    if k == basis.len() {
        if let Some(a) = solve(norm, b_inv, images) {
            if preserves(norm, &a) {
                found.push(a);
            }
        }
        return;
    }
    let src = basis[k];
    for candidate in 0..norm.forms().len() {
        if images.contains(&candidate) || degree[candidate] != degree[src] {
            continue;
        }
        let consistent = (0..k).all(|l| adjacent[basis[l]][src] == adjacent[images[l]][candidate]);
        if !consistent {
            continue;
        }
        images.push(candidate);
        search(norm, basis, b_inv, adjacent, degree, images, found);
        images.pop();
    }
}

/// `A = B^-1 M` where rows of `M` are the chosen images; `None` unless integral.
fn solve(norm: &PolyhedralNorm, b_inv: &[Vec<Rational>], images: &[usize]) -> Option<IntMatrix> {
    let n = images.len();
    let forms = norm.forms();
    let mut rows = Vec::with_capacity(n);
    for b_row in b_inv.iter().take(n) {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let v: Rational = (0..n).map(|k| &b_row[k] * &forms[images[k]].coeffs()[j]).sum();
            if !v.is_integer() {
                return None;
            }
            row.push(v.to_integer().to_i64()?);
        }
        rows.push(row);
    }
    IntMatrix::from_rows(&rows).ok()
}

pub fn isobarycenter(p: &VPolytope) -> Result<QVector> {
    p.isobarycenter()
}

/// Some `g = (A, t)` with `g(p) = q`, where `t` is fixed by the isobarycenters.
pub fn equivalent(p: &VPolytope, q: &VPolytope, group: &PointGroup) -> Option<AffineSymmetry> {
    if p.vertices().len() != q.vertices().len() {
        return None;
    }
    let cp = p.isobarycenter().ok()?;
    let cq = q.isobarycenter().ok()?;
    group.elements().iter().find_map(|a| {
        let shift = &cq - &a.apply(&cp);
        if !shift.is_integral() {
            return None;
        }
        let g = AffineSymmetry {
            linear: a.clone(),
            shift,
        };
        (g.map_polytope(p) == *q).then_some(g)
    })
}

pub fn stabilizer(p: &VPolytope, group: &PointGroup) -> Vec<AffineSymmetry> {
    let Ok(c) = p.isobarycenter() else {
        return Vec::new();
    };
    group
        .elements()
        .iter()
        .filter_map(|a| {
            let shift = &c - &a.apply(&c);
            if !shift.is_integral() {
                return None;
            }
            let g = AffineSymmetry {
                linear: a.clone(),
                shift,
            };
            (g.map_polytope(p) == *p).then_some(g)
        })
        .collect()
}

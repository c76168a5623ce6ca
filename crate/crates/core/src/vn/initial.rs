use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::arrangement::{Arrangement, CellForms, CellSignature};
use crate::error::{Error, Result};
use crate::exact::{QVector, Rational};
use crate::lattice_enum::closest_lattice_points;
use crate::norm::PolyhedralNorm;
use crate::polyhedra::{facets_from_inequalities, HPolyhedron, Inequality};

use super::certify::candidate_points;
use super::VnSpace;

const MAX_DOUBLINGS: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeFailure {
    /// The point lies on a hyperplane of the arrangement.
    OnWall { class: usize },
    /// Several closest lattice points and no VN-space has the point in its interior.
    Ambiguous { closest: Vec<QVector> },
    /// A unique closest point, yet the point is on the boundary of the candidate polytope.
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InitialOutcome {
    Found(Box<VnSpace>),
    Failed(ProbeFailure),
}

impl InitialOutcome {
    pub fn found(self) -> Option<VnSpace> {
        match self {
            InitialOutcome::Found(s) => Some(*s),
            InitialOutcome::Failed(_) => None,
        }
    }
}

/// `{0, +-e_i, +-(e_1 + ... + e_n)}`.
fn initial_steps(n: usize) -> BTreeSet<QVector> {
    let mut s = BTreeSet::new();
    s.insert(QVector::zeros(n));
    let all = QVector(vec![Rational::from_integer(1.into()); n]);
    s.insert(-&all);
    s.insert(all);
    for i in 0..n {
        let e = QVector::unit(n, i);
        s.insert(-&e);
        s.insert(e);
    }
    s
}

fn minkowski_double(s: &BTreeSet<QVector>) -> BTreeSet<QVector> {
    let mut out = BTreeSet::new();
    for a in s {
        for b in s {
            out.insert(a + b);
        }
    }
    out
}

/// The VN-space having `x0` in its interior, built inside the arrangement cell of `x0`.
pub fn find_initial(norm: &PolyhedralNorm, aha: &Arrangement, x0: &QVector) -> Result<InitialOutcome> {
    let (sig, cell) = match aha.cell_of_point(x0) {
        Ok(c) => c,
        Err(Error::OnWall { class, .. }) => return Ok(InitialOutcome::Failed(ProbeFailure::OnWall { class })),
        Err(e) => return Err(e),
    };
    let cell_vertices = cell.dual_description()?;
    let forms = CellForms::new(norm, cell_vertices.vertices());
    let (_, closest) = closest_lattice_points(x0, norm)?;
    for v0 in &closest {
        if let Some(space) = grow(norm, &cell, &sig, &forms, x0, v0)? {
            return Ok(InitialOutcome::Found(Box::new(space)));
        }
    }
    let failure = if closest.len() > 1 {
        ProbeFailure::Ambiguous { closest }
    } else {
        ProbeFailure::Boundary
    };
    Ok(InitialOutcome::Failed(failure))
}

fn grow(
    norm: &PolyhedralNorm,
    cell: &HPolyhedron,
    sig: &CellSignature,
    cf: &CellForms<'_>,
    x0: &QVector,
    v0: &QVector,
) -> Result<Option<VnSpace>> {
    let n = norm.dim();
    let forms = norm.forms();
    let not_adapted = |w: &QVector| Error::NotAdapted(format!("no dominant form for {w} on the cell of {x0}"));
    let i0 = cf.dominant(v0).ok_or_else(|| not_adapted(v0))?;
    let l0 = &forms[i0];
    let l0_at_v = l0.apply(v0);
    let alpha = |x: &QVector| l0.apply(x) - &l0_at_v;

    let mut steps = initial_steps(n);
    for _ in 0..=MAX_DOUBLINGS {
        let mut rows: Vec<Inequality> = cell.inequalities().to_vec();
        for s in &steps {
            if s.is_zero() {
                continue;
            }
            let w = v0 + s;
            let lw = &forms[cf.dominant(&w).ok_or_else(|| not_adapted(&w))?];
            // alpha(x) <= lw(x - w)
            let normal = l0.sub(lw);
            let rhs = &l0_at_v - lw.apply(&w);
            if normal.is_zero() {
                debug_assert!(
                    !rhs.is_negative(),
                    "a lattice point closer everywhere than the closest one"
                );
                continue;
            }
            rows.push(Inequality::new(normal, rhs));
        }
        let p = HPolyhedron::new(n, rows.clone())?.dual_description()?;
        debug_assert!(!p.is_empty(), "x0 satisfies every row");

        let mut near = vec![v0.clone()];
        let mut complete = true;
        for w in candidate_points(norm, p.vertices(), alpha)? {
            if w == *v0 {
                continue;
            }
            let lw = &forms[cf.dominant(&w).ok_or_else(|| not_adapted(&w))?];
            let gaps: Vec<Rational> = p
                .vertices()
                .iter()
                .map(|u| lw.apply_shifted(u, &w) - alpha(u))
                .collect();
            if gaps.iter().all(Zero::is_zero) {
                near.push(w);
            } else if gaps.iter().any(Signed::is_negative) {
                debug_assert!(!steps.contains(&(&w - v0)));
                complete = false;
            }
        }
        if !complete {
            steps = minkowski_double(&steps);
            continue;
        }
        let interior = rows.iter().all(|r| r.slack(x0).is_positive());
        if !interior {
            return Ok(None);
        }
        near.sort();
        let facets = facets_from_inequalities(&p, &rows);
        return Ok(Some(VnSpace {
            polytope: p,
            facets,
            center: v0.clone(),
            form: l0.clone(),
            near,
            cell: sig.clone(),
        }));
    }
    Err(Error::IterationLimit("Minkowski doubling of the step set"))
}

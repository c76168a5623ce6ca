use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{LinearForm, QVector, Rational};
use crate::lattice_enum::{closest_lattice_points, integer_points};
use crate::norm::PolyhedralNorm;
use crate::polyhedra::{facets, lp, HPolyhedron, Inequality, VPolytope};

use super::VnSpace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `form(point - v) > l0(point - v)` at a vertex, for every admissible `l0`.
    FormViolation { form: LinearForm, point: QVector },
    /// Lattice points strictly closer than `alpha` on a full-dimensional part.
    Violators { center: QVector, points: Vec<QVector> },
    /// The barycenter has several closest points and none of them certifies.
    AmbiguousWitness {
        candidates: Vec<QVector>,
        details: Vec<Certificate>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VnCheck {
    Valid {
        center: QVector,
        form: LinearForm,
        near: Vec<QVector>,
    },
    Invalid(Certificate),
}

impl VnCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, VnCheck::Valid { .. })
    }
}

/// Lattice points `w` that could satisfy `N(x - w) <= alpha(x)` somewhere on the polytope:
/// `l(w) >= min over vertices of (l - alpha)` for every form.
pub(crate) fn candidate_points(
    norm: &PolyhedralNorm,
    vertices: &[QVector],
    alpha: impl Fn(&QVector) -> Rational,
) -> Result<Vec<QVector>> {
    let alphas: Vec<Rational> = vertices.iter().map(&alpha).collect();
    let ineqs = norm
        .forms()
        .iter()
        .map(|f| {
            let lo = vertices
                .iter()
                .zip(&alphas)
                .map(|(u, a)| f.apply(u) - a)
                .min()
                .expect("polytope has vertices");
            Inequality::new(f.neg(), -lo)
        })
        .collect();
    integer_points(&HPolyhedron::new(norm.dim(), ineqs)?)
}

fn check_center(norm: &PolyhedralNorm, p: &VPolytope, h: &HPolyhedron, c: &QVector, v0: &QVector) -> Result<VnCheck> {
    let n = norm.dim();
    let forms = norm.forms();
    let (_, tied) = norm.value_with_argmax(&(c - v0));

    let mut chosen = None;
    let mut first_violation = None;
    for &i in &tied {
        let l0 = &forms[i];
        let bad = p.vertices().iter().find_map(|u| {
            let a = l0.apply_shifted(u, v0);
            forms
                .iter()
                .find(|f| f.apply_shifted(u, v0) > a)
                .map(|f| (f.clone(), u.clone()))
        });
        match bad {
            None => {
                chosen = Some(l0.clone());
                break;
            }
            Some(b) => {
                first_violation.get_or_insert(b);
            }
        }
    }
    let Some(l0) = chosen else {
        let (form, point) = first_violation.expect("some form is tied");
        return Ok(VnCheck::Invalid(Certificate::FormViolation { form, point }));
    };

    let alpha = |x: &QVector| l0.apply_shifted(x, v0);
    let mut near = vec![v0.clone()];
    let mut violators = Vec::new();
    let l0_at_v = l0.apply(v0);
    for w in candidate_points(norm, p.vertices(), alpha)? {
        if w == *v0 {
            continue;
        }
        // max t with x in P, l(x - w) + t <= alpha(x) for all l, t <= 1
        let mut rows: Vec<Inequality> = h
            .inequalities()
            .iter()
            .map(|i| {
                let mut a = i.normal.coeffs().to_vec();
                a.push(Rational::zero());
                Inequality::new(LinearForm(a), i.rhs.clone())
            })
            .collect();
        for f in forms {
            let mut a = f.sub(&l0).coeffs().to_vec();
            a.push(Rational::one());
            rows.push(Inequality::new(LinearForm(a), f.apply(&w) - &l0_at_v));
        }
        let t = LinearForm::coordinate(n + 1, n);
        rows.push(Inequality::new(t.clone(), Rational::one()));
        match lp::maximize(n + 1, &rows, &t) {
            lp::LpOutcome::Optimal { value, .. } if value.is_positive() => violators.push(w),
            _ => {
                if p.vertices().iter().all(|u| norm.distance(u, &w) == alpha(u)) {
                    near.push(w);
                }
            }
        }
    }
    if !violators.is_empty() {
        return Ok(VnCheck::Invalid(Certificate::Violators {
            center: v0.clone(),
            points: violators,
        }));
    }
    near.sort();
    Ok(VnCheck::Valid {
        center: v0.clone(),
        form: l0,
        near,
    })
}

/// Certifies the VN-space conditions for a witness taken from the barycenter's closest points.
pub fn is_vn_space(norm: &PolyhedralNorm, p: &VPolytope) -> Result<VnCheck> {
    if p.affine_dim() != Some(norm.dim()) {
        return Err(Error::LowerDimensional);
    }
    let h = HPolyhedron::new(p.dim(), facets(p)?.iter().map(|f| f.inequality()).collect())?;
    let c = p.isobarycenter()?;
    let (_, closest) = closest_lattice_points(&c, norm)?;
    let mut details = Vec::new();
    for v0 in &closest {
        match check_center(norm, p, &h, &c, v0)? {
            valid @ VnCheck::Valid { .. } => return Ok(valid),
            VnCheck::Invalid(cert) => details.push(cert),
        }
    }
    if closest.len() == 1 {
        return Ok(VnCheck::Invalid(details.pop().expect("one candidate")));
    }
    Ok(VnCheck::Invalid(Certificate::AmbiguousWitness {
        candidates: closest,
        details,
    }))
}

/// The maximal Near set of a certified VN-space, recomputed from its polytope.
pub fn near_of(norm: &PolyhedralNorm, space: &VnSpace) -> Result<Vec<QVector>> {
    let alpha = |x: &QVector| space.alpha_at(x);
    let mut near: Vec<QVector> = candidate_points(norm, space.polytope.vertices(), alpha)?
        .into_iter()
        .filter(|w| {
            space
                .polytope
                .vertices()
                .iter()
                .all(|u| norm.distance(u, w) == alpha(u))
        })
        .collect();
    near.sort();
    Ok(near)
}

//! VN-spaces: certification, seeding, adjacency and enumeration up to symmetry.

mod adjacent;
mod certify;
mod enumerate;
mod initial;
mod verify;

pub use adjacent::find_adjacent;
pub use certify::{is_vn_space, near_of, Certificate, VnCheck};
pub use enumerate::{enumerate, random_point, Decomposition, FacetLink, Orbit};
pub use initial::{find_initial, InitialOutcome, ProbeFailure};
pub use verify::{verify, FaceIssue, VerificationRecord};

use crate::arrangement::{adapted_set, build_aha, Arrangement, CellSignature, Strategy};
use crate::error::Result;
use crate::exact::{AffineFunctional, LinearForm, QVector, Rational};
use crate::norm::PolyhedralNorm;
use crate::polyhedra::{facets_from_inequalities, Facet, HPolyhedron, Inequality, VPolytope};
use crate::symmetry::point_group;
use crate::symmetry::AffineSymmetry;

/// A polytope on which the distance to the lattice is `alpha(x) = form(x - center)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VnSpace {
    pub polytope: VPolytope,
    pub facets: Vec<Facet>,
    pub center: QVector,
    pub form: LinearForm,
    /// Every lattice point whose distance equals `alpha` on the whole polytope, sorted.
    pub near: Vec<QVector>,
    pub cell: CellSignature,
}

impl VnSpace {
    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn alpha(&self) -> AffineFunctional {
        AffineFunctional::new(self.form.clone(), self.center.clone())
    }

    pub fn alpha_at(&self, x: &QVector) -> Rational {
        self.form.apply_shifted(x, &self.center)
    }

    pub fn hpolyhedron(&self) -> HPolyhedron {
        HPolyhedron::new(self.dim(), self.facets.iter().map(Facet::inequality).collect())
            .expect("facet dimensions agree")
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.facets.iter().all(|f| f.inequality().holds(x))
    }

    pub fn interior_contains(&self, x: &QVector) -> bool {
        self.facets
            .iter()
            .all(|f| f.inequality().slack(x) > Rational::from_integer(0.into()))
    }

    pub fn isobarycenter(&self) -> QVector {
        self.polytope.isobarycenter().expect("VN-spaces have vertices")
    }

    /// Vertex set of facet `f`, sorted.
    pub fn facet_vertices(&self, f: usize) -> Vec<QVector> {
        self.facets[f]
            .vertices
            .iter()
            .map(|&k| self.polytope.vertices()[k].clone())
            .collect()
    }

    /// Index of the facet with exactly this vertex set.
    pub fn facet_with_vertices(&self, vertices: &[QVector]) -> Option<usize> {
        (0..self.facets.len()).find(|&f| self.facet_vertices(f) == vertices)
    }

    /// Image under an affine symmetry of the norm and lattice.
    pub fn image(&self, g: &AffineSymmetry, aha: &Arrangement) -> VnSpace {
        let polytope = g.map_polytope(&self.polytope);
        let inv = g.linear.inverse().expect("symmetries are unimodular");
        let ineqs: Vec<Inequality> = self
            .facets
            .iter()
            .map(|f| {
                let normal = f.normal.compose(&inv);
                let rhs = &f.rhs + normal.apply(&g.shift);
                Inequality::new(normal, rhs)
            })
            .collect();
        let facets = facets_from_inequalities(&polytope, &ineqs);
        let mut near: Vec<QVector> = self.near.iter().map(|w| g.apply(w)).collect();
        near.sort();
        let cell = aha.signature_of(&polytope).unwrap_or_else(|| self.cell.clone());
        VnSpace {
            facets,
            center: g.apply(&self.center),
            form: g.transport_form(&self.form),
            near,
            cell,
            polytope,
        }
    }
}

/// Adapted arrangement, point group and full enumeration in one call.
pub fn decompose(norm: &PolyhedralNorm, strategy: Strategy, seed: u64) -> Result<Decomposition> {
    let set = adapted_set(norm, strategy)?;
    let aha = build_aha(norm.dim(), &set)?;
    let group = point_group(norm);
    enumerate(norm, &aha, &group, seed)
}

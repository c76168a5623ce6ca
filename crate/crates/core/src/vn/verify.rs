use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exact::{QVector, Rational};
use crate::symmetry::AffineSymmetry;

use super::{find_initial, is_vn_space, Decomposition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceIssue {
    pub orbit: usize,
    pub facet: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationRecord {
    pub trials: usize,
    pub random_points_checked: usize,
    /// `(orbit, point)` where the re-derived VN-space differs from the representative.
    pub random_mismatches: Vec<(usize, QVector)>,
    pub volume_sum: Rational,
    pub volume_ok: bool,
    pub face_to_face: Vec<FaceIssue>,
    /// Orbits whose representative fails independent certification.
    pub certification_failures: Vec<usize>,
    /// Orbits whose representative is crossed by a wall of the arrangement.
    pub cell_failures: Vec<usize>,
}

impl VerificationRecord {
    pub fn passed(&self) -> bool {
        self.random_mismatches.is_empty()
            && self.volume_ok
            && self.face_to_face.is_empty()
            && self.certification_failures.is_empty()
            && self.cell_failures.is_empty()
    }
}

/// A strictly interior point: positive rational weights on all vertices.
fn interior_point(rng: &mut impl Rng, vertices: &[QVector]) -> QVector {
    let weights: Vec<i64> = vertices.iter().map(|_| rng.gen_range(1..=16)).collect();
    let total: i64 = weights.iter().sum();
    let mut x = QVector::zeros(vertices[0].dim());
    for (v, w) in vertices.iter().zip(&weights) {
        x = &x + &v.scale(&Rational::from_integer((*w).into()));
    }
    x.scale(&Rational::new(1.into(), total.into()))
}

pub fn verify(d: &Decomposition, trials: usize) -> Result<VerificationRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(d.seed ^ 0x5eed_f00d);
    let mut random_mismatches = Vec::new();
    let mut checked = 0;
    for (i, orbit) in d.orbits.iter().enumerate() {
        for _ in 0..trials {
            let x = interior_point(&mut rng, orbit.rep.polytope.vertices());
            checked += 1;
            match find_initial(&d.norm, &d.aha, &x)?.found() {
                Some(space) if space.polytope == orbit.rep.polytope => {}
                _ => random_mismatches.push((i, x)),
            }
        }
    }

    let volume_sum = d.volume_sum();
    let volume_ok = volume_sum == Rational::from_integer(1.into());

    let mut face_to_face = Vec::new();
    let identity = AffineSymmetry::identity(d.dim());
    for (i, orbit) in d.orbits.iter().enumerate() {
        let rep = &orbit.rep;
        for f in 0..rep.facets.len() {
            let shared = rep.facet_vertices(f);
            let mut b = QVector::zeros(d.dim());
            for v in &shared {
                b = &b + v;
            }
            let b = b.scale(&Rational::new(1.into(), shared.len().into()));
            let images = d.images_containing(&b);
            let mut issue = |detail: String| {
                face_to_face.push(FaceIssue {
                    orbit: i,
                    facet: f,
                    detail,
                });
            };
            if images.len() != 2 {
                issue(format!("facet barycenter {b} lies in {} tiles", images.len()));
            }
            if images
                .iter()
                .any(|(j, g)| d.orbits[*j].rep.interior_contains(&g.inverse().apply(&b)))
            {
                issue(format!("facet barycenter {b} is interior to a tile"));
            }
            let (j, g) = d.neighbour_of(i, &identity, f);
            let neighbour = d.orbits[j].rep.image(&g, &d.aha);
            if neighbour.facet_with_vertices(&shared).is_none() {
                issue("neighbour does not share the whole facet".into());
            }
            if neighbour.polytope == rep.polytope {
                issue("neighbour coincides with the tile".into());
            }
        }
    }

    let mut certification_failures = Vec::new();
    let mut cell_failures = Vec::new();
    for (i, orbit) in d.orbits.iter().enumerate() {
        if !is_vn_space(&d.norm, &orbit.rep.polytope)?.is_valid() {
            certification_failures.push(i);
        }
        if d.aha.signature_of(&orbit.rep.polytope).is_none() {
            cell_failures.push(i);
        }
    }

    Ok(VerificationRecord {
        trials,
        random_points_checked: checked,
        random_mismatches,
        volume_sum,
        volume_ok,
        face_to_face,
        certification_failures,
        cell_failures,
    })
}

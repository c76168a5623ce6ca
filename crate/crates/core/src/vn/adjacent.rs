use num_traits::{One, Signed};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exact::{QVector, Rational};
use crate::norm::PolyhedralNorm;

use super::{find_initial, VnSpace};

const MAX_HALVINGS: usize = 64;

/// The VN-space across facet `facet` of `space`, sharing that whole facet.
pub fn find_adjacent(norm: &PolyhedralNorm, aha: &Arrangement, space: &VnSpace, facet: usize) -> Result<VnSpace> {
    let f = &space.facets[facet];
    let shared = space.facet_vertices(facet);
    let mut e = QVector::zeros(space.dim());
    for v in &shared {
        e = &e + v;
    }
    let e = e.scale(&Rational::new(1.into(), shared.len().into()));
    let u = f.normal.as_vector();

    // Half the distance, along -u, to the nearest other facet hyperplane.
    let mut lambda = space
        .facets
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != facet)
        .filter_map(|(_, g)| {
            let rate = g.normal.apply(&u);
            rate.is_negative().then(|| g.inequality().slack(&e) / -rate)
        })
        .min()
        .map_or_else(Rational::one, |m| m / Rational::from_integer(2.into()));

    let two = Rational::from_integer(2.into());
    for _ in 0..MAX_HALVINGS {
        let x = &e + &u.scale(&lambda);
        if let Some(next) = find_initial(norm, aha, &x)?.found() {
            if next.facet_with_vertices(&shared).is_some() {
                return Ok(next);
            }
        }
        lambda /= &two;
    }
    Err(Error::AdjacencyProbeFailed {
        facet,
        space: format!(
            "{:?}",
            space
                .polytope
                .vertices()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        ),
    })
}

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exact::{QVector, Rational};
use crate::lattice_enum::box_points;
use crate::norm::PolyhedralNorm;
use crate::polyhedra::volume_with_facets;
use crate::symmetry::{equivalent, stabilizer, AffineSymmetry, PointGroup};

use super::{find_adjacent, find_initial, VnSpace};

const INITIAL_ATTEMPTS: usize = 100;
/// Random points have denominator `2^DENOM_POWER * 3`.
const DENOM_POWER: u32 = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub rep: VnSpace,
    pub stabilizer: Vec<AffineSymmetry>,
    pub orbit_size: usize,
    pub tvol: Rational,
}

/// Across facet `f` of representative `i` lies `symmetry(rep(neighbour))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetLink {
    pub neighbour: usize,
    pub symmetry: AffineSymmetry,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub norm: PolyhedralNorm,
    pub aha: Arrangement,
    pub group: PointGroup,
    pub orbits: Vec<Orbit>,
    /// `facet_graph[i][f]` for every facet `f` of representative `i`.
    pub facet_graph: Vec<Vec<FacetLink>>,
    pub seed: u64,
}

impl Decomposition {
    pub fn dim(&self) -> usize {
        self.norm.dim()
    }

    pub fn volume_sum(&self) -> Rational {
        self.orbits
            .iter()
            .map(|o| Rational::from_integer(o.orbit_size.into()) * &o.tvol)
            .sum()
    }

    /// Distinct images `g(rep(j))` that contain `x`, with `g` in the affine symmetry group.
    pub fn images_containing(&self, x: &QVector) -> Vec<(usize, AffineSymmetry)> {
        let mut seen: BTreeSet<Vec<QVector>> = BTreeSet::new();
        let mut out = Vec::new();
        for (j, orbit) in self.orbits.iter().enumerate() {
            for a in self.group.elements() {
                let inv = a.inverse().expect("unimodular");
                let mapped: Vec<QVector> = orbit.rep.polytope.vertices().iter().map(|v| a.apply(v)).collect();
                let n = x.dim();
                let lo: Vec<BigInt> = (0..n)
                    .map(|c| {
                        (&x[c] - mapped.iter().map(|v| &v[c]).max().expect("vertices"))
                            .ceil()
                            .to_integer()
                    })
                    .collect();
                let hi: Vec<BigInt> = (0..n)
                    .map(|c| {
                        (&x[c] - mapped.iter().map(|v| &v[c]).min().expect("vertices"))
                            .floor()
                            .to_integer()
                    })
                    .collect();
                for t in box_points(&lo, &hi) {
                    if !orbit.rep.contains(&inv.apply(&(x - &t))) {
                        continue;
                    }
                    let mut key: Vec<QVector> = mapped.iter().map(|v| v + &t).collect();
                    key.sort();
                    if seen.insert(key) {
                        out.push((
                            j,
                            AffineSymmetry {
                                linear: a.clone(),
                                shift: t,
                            },
                        ));
                    }
                }
            }
        }
        out
    }

    /// The space across facet `f` of `g(rep(i))`, as `(neighbour, symmetry)`.
    pub fn neighbour_of(&self, i: usize, g: &AffineSymmetry, f: usize) -> (usize, AffineSymmetry) {
        let link = &self.facet_graph[i][f];
        (link.neighbour, g.compose(&link.symmetry))
    }
}

/// Uniform point of `[0, 1)^n` with denominator `2^k * 3`.
pub fn random_point(rng: &mut impl Rng, n: usize) -> QVector {
    let den: i64 = 3 << DENOM_POWER;
    QVector(
        (0..n)
            .map(|_| Rational::new(rng.gen_range(0..den).into(), den.into()))
            .collect(),
    )
}

fn new_orbit(rep: VnSpace, group: &PointGroup) -> Orbit {
    let stab = stabilizer(&rep.polytope, group);
    let orbit_size = group.order() / stab.len();
    let tvol = volume_with_facets(&rep.polytope, &rep.facets);
    Orbit {
        rep,
        stabilizer: stab,
        orbit_size,
        tvol,
    }
}

/// Index of the facet of `space` that `g` maps facet `f` onto, when `g` fixes `space`.
fn facet_image(space: &VnSpace, g: &AffineSymmetry, f: usize) -> usize {
    let mut image: Vec<QVector> = space.facet_vertices(f).iter().map(|v| g.apply(v)).collect();
    image.sort();
    space.facet_with_vertices(&image).expect("stabilizer permutes facets")
}

/// Breadth-first enumeration of VN-space orbits under the affine symmetry group.
pub fn enumerate(norm: &PolyhedralNorm, aha: &Arrangement, group: &PointGroup, seed: u64) -> Result<Decomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut first = None;
    for _ in 0..INITIAL_ATTEMPTS {
        let x = random_point(&mut rng, norm.dim());
        if let Some(space) = find_initial(norm, aha, &x)?.found() {
            first = Some(space);
            break;
        }
    }
    let first = first.ok_or(Error::NoInitialSpace {
        attempts: INITIAL_ATTEMPTS,
    })?;

    let mut orbits = vec![new_orbit(first, group)];
    let mut links: Vec<Vec<Option<FacetLink>>> = vec![vec![None; orbits[0].rep.facets.len()]];
    let mut queue: BTreeMap<QVector, usize> = BTreeMap::new();
    queue.insert(orbits[0].rep.isobarycenter(), 0);

    while let Some((_, i)) = queue.pop_first() {
        let rep = orbits[i].rep.clone();
        let stab = orbits[i].stabilizer.clone();
        for f in 0..rep.facets.len() {
            if links[i][f].is_some() {
                continue;
            }
            let next = find_adjacent(norm, aha, &rep, f)?;
            let known = orbits
                .iter()
                .enumerate()
                .find_map(|(j, o)| equivalent(&o.rep.polytope, &next.polytope, group).map(|g| (j, g)));
            let (j, g) = match known {
                Some(found) => found,
                None => {
                    let j = orbits.len();
                    queue.insert(next.isobarycenter(), j);
                    links.push(vec![None; next.facets.len()]);
                    orbits.push(new_orbit(next, group));
                    (j, AffineSymmetry::identity(norm.dim()))
                }
            };
            for s in &stab {
                let target = facet_image(&rep, s, f);
                if links[i][target].is_none() {
                    links[i][target] = Some(FacetLink {
                        neighbour: j,
                        symmetry: s.compose(&g),
                    });
                }
            }
        }
    }

    let facet_graph = links
        .into_iter()
        .map(|row| row.into_iter().map(|l| l.expect("every facet resolved")).collect())
        .collect();
    Ok(Decomposition {
        norm: norm.clone(),
        aha: aha.clone(),
        group: group.clone(),
        orbits,
        facet_graph,
        seed,
    })
}

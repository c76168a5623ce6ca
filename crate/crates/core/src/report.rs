//! JSON run report. Rationals are written as `"p/q"` strings.

use serde::Serialize;

use crate::analysis::{CoveringRadius, DPointSet, EuclideanComparison, VertexReport, VoronoiRegion};
use crate::arrangement::Strategy;
use crate::error::Result;
use crate::exact::{format_rational, LinearForm, QVector};
use crate::job::Problem;
use crate::lattice::LatticeBasis;
use crate::vn::{Decomposition, VerificationRecord};

pub const SCHEMA_VERSION: u32 = 1;

type Point = Vec<String>;

fn points(ps: &[QVector]) -> Vec<Point> {
    ps.iter().map(QVector::to_strings).collect()
}

fn forms(fs: &[LinearForm]) -> Vec<Point> {
    fs.iter().map(LinearForm::to_strings).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct NormBlock {
    pub dim: usize,
    pub forms: Vec<Point>,
    pub symmetric: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeBlock {
    pub name: String,
    pub basis: Vec<Point>,
    pub ambient_forms: Vec<Point>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitBlock {
    pub vertices: Vec<Point>,
    pub center: Point,
    pub form: Point,
    pub near: Vec<Point>,
    pub stabilizer: usize,
    pub orbit_size: usize,
    pub tvol: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Checks {
    pub trials_per_orbit: usize,
    pub random_points_checked: usize,
    pub random_mismatches: Vec<Point>,
    pub volume_sum: String,
    pub volume_ok: bool,
    pub face_to_face_issues: Vec<String>,
    pub certification_failures: Vec<usize>,
    pub cell_failures: Vec<usize>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoveringBlock {
    pub value: String,
    pub witness: Point,
    pub ambient_witness: Point,
}

#[derive(Clone, Debug, Serialize)]
pub struct PieceBlock {
    pub orbit: usize,
    pub vertices: Vec<Point>,
    pub near: Vec<Point>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegionBlock {
    pub closed: bool,
    pub pieces: Vec<PieceBlock>,
    pub volume: String,
    pub hull: Vec<Point>,
    pub convex: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Regions {
    pub center: Point,
    pub closed: RegionBlock,
    pub open: RegionBlock,
}

#[derive(Clone, Debug, Serialize)]
pub struct DPointBlock {
    pub dimension: usize,
    pub pieces: Vec<Vec<Point>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexBlock {
    pub vertices: Vec<Point>,
    pub exterior_vertices: Vec<Point>,
    pub readings_agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EuclideanBlock {
    pub region_vertices: Vec<Point>,
    pub euclidean_vertices: Vec<Point>,
    pub matches_euclidean: bool,
    pub closed_volume: String,
    pub open_volume: String,
    pub confirmed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub norm: NormBlock,
    pub lattice: LatticeBlock,
    pub strategy: String,
    pub seed: u64,
    pub group_order: usize,
    pub orbits: Vec<OrbitBlock>,
    pub checks: Checks,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub covering_radius: Option<CoveringBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regions: Option<Regions>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_points: Option<DPointBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<VertexBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euclidean: Option<EuclideanBlock>,
}

impl Report {
    pub fn new(problem: &Problem, strategy: Strategy, d: &Decomposition, record: &VerificationRecord) -> Self {
        let orbits = d
            .orbits
            .iter()
            .map(|o| OrbitBlock {
                vertices: points(o.rep.polytope.vertices()),
                center: o.rep.center.to_strings(),
                form: o.rep.form.to_strings(),
                near: points(&o.rep.near),
                stabilizer: o.stabilizer.len(),
                orbit_size: o.orbit_size,
                tvol: format_rational(&o.tvol),
            })
            .collect();
        Report {
            schema_version: SCHEMA_VERSION,
            norm: NormBlock {
                dim: d.norm.dim(),
                forms: forms(d.norm.forms()),
                symmetric: d.norm.is_symmetric(),
            },
            lattice: LatticeBlock {
                name: problem.lattice_name.clone(),
                basis: points(problem.basis.vectors()),
                ambient_forms: forms(problem.ambient.forms()),
            },
            strategy: strategy.to_string(),
            seed: d.seed,
            group_order: d.group.order(),
            orbits,
            checks: checks(record),
            covering_radius: None,
            regions: None,
            d_points: None,
            vertices: None,
            euclidean: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn checks(r: &VerificationRecord) -> Checks {
    Checks {
        trials_per_orbit: r.trials,
        random_points_checked: r.random_points_checked,
        random_mismatches: r.random_mismatches.iter().map(|(_, x)| x.to_strings()).collect(),
        volume_sum: format_rational(&r.volume_sum),
        volume_ok: r.volume_ok,
        face_to_face_issues: r
            .face_to_face
            .iter()
            .map(|f| format!("orbit {} facet {}: {}", f.orbit, f.facet, f.detail))
            .collect(),
        certification_failures: r.certification_failures.clone(),
        cell_failures: r.cell_failures.clone(),
        passed: r.passed(),
    }
}

pub fn covering(c: &CoveringRadius, basis: &LatticeBasis) -> CoveringBlock {
    CoveringBlock {
        value: format_rational(&c.value),
        witness: c.witness.to_strings(),
        ambient_witness: basis.to_ambient(&c.witness).to_strings(),
    }
}

fn region_block(d: &Decomposition, r: &VoronoiRegion) -> Result<RegionBlock> {
    let pieces = r
        .pieces
        .iter()
        .map(|p| PieceBlock {
            orbit: p.orbit,
            vertices: points(p.polytope.vertices()),
            near: points(&p.near),
        })
        .collect();
    let (hull, convex) = if r.pieces.is_empty() {
        (Vec::new(), false)
    } else {
        (points(r.hull()?.vertices()), r.is_convex(d)?)
    };
    Ok(RegionBlock {
        closed: r.closed,
        pieces,
        volume: format_rational(&r.volume(d)),
        hull,
        convex,
    })
}

pub fn regions(d: &Decomposition, closed: &VoronoiRegion, open: &VoronoiRegion) -> Result<Regions> {
    Ok(Regions {
        center: closed.center.to_strings(),
        closed: region_block(d, closed)?,
        open: region_block(d, open)?,
    })
}

pub fn d_point_block(s: &DPointSet) -> DPointBlock {
    DPointBlock {
        dimension: s.dimension,
        pieces: s.pieces.iter().map(|p| points(p.vertices())).collect(),
    }
}

pub fn vertex_block(v: &VertexReport) -> VertexBlock {
    VertexBlock {
        vertices: points(&v.vertices),
        exterior_vertices: points(&v.exterior_vertices),
        readings_agree: v.readings_agree(),
    }
}

pub fn euclidean_block(c: &EuclideanComparison) -> EuclideanBlock {
    EuclideanBlock {
        region_vertices: points(&c.region_vertices),
        euclidean_vertices: points(&c.euclidean_vertices),
        matches_euclidean: c.matches_euclidean,
        closed_volume: format_rational(&c.closed_volume),
        open_volume: format_rational(&c.open_volume),
        confirmed: c.confirmed(),
    }
}

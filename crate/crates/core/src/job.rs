//! Job files: which norm, which lattice, which tasks.

use std::collections::BTreeSet;
use std::str::FromStr;

use serde::Deserialize;

use crate::analysis::{covering_radius, d_points, euclidean_comparison, voronoi_region, voronoi_vertices};
use crate::arrangement::Strategy;
use crate::error::{Error, Result};
use crate::exact::{parse_rational, LinearForm, QVector};
use crate::lattice::{an_basis, dn_basis, pullback_norm, LatticeBasis};
use crate::norm::{validate_norm, PolyhedralNorm};
use crate::report::{self, Report};
use crate::svg;
use crate::vn::{decompose, verify};

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum NormSpec {
    /// `"l1"` or `"linf"`.
    Named(String),
    Forms {
        forms: Vec<Vec<String>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum LatticeSpec {
    /// `"Zn"`, `"An"`, `"Dn"`, optionally with the rank spelled out (`"A3"`).
    Named(String),
    Basis {
        basis: Vec<Vec<String>>,
    },
}

impl Default for LatticeSpec {
    fn default() -> Self {
        LatticeSpec::Named("Zn".into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Decompose,
    CoveringRadius,
    Voronoi,
    DPoints,
    Vertices,
    Euclidean,
    Svg,
}

impl Task {
    pub const ANALYSES: [Task; 6] = [
        Task::Decompose,
        Task::CoveringRadius,
        Task::Voronoi,
        Task::DPoints,
        Task::Vertices,
        Task::Euclidean,
    ];
}

impl FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| Error::Parse(format!("unknown task {s:?}")))
    }
}

fn default_adapted() -> String {
    "auto".into()
}

fn default_trials() -> usize {
    100
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    /// Rank of the lattice, i.e. the dimension the decomposition lives in.
    pub dim: usize,
    pub norm: NormSpec,
    #[serde(default)]
    pub lattice: LatticeSpec,
    #[serde(default = "default_adapted")]
    pub adapted: String,
    #[serde(default)]
    pub tasks: Vec<Task>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_trials")]
    pub trials: usize,
}

impl JobSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("job file: {e}")))
    }

    /// Requested tasks; an empty list means every analysis.
    pub fn task_set(&self) -> BTreeSet<Task> {
        if self.tasks.is_empty() {
            Task::ANALYSES.into_iter().collect()
        } else {
            self.tasks.iter().copied().collect()
        }
    }
}

/// The norm on lattice coordinates together with where it came from.
#[derive(Clone, Debug)]
pub struct Problem {
    pub lattice_name: String,
    pub basis: LatticeBasis,
    pub ambient: PolyhedralNorm,
    pub norm: PolyhedralNorm,
}

fn lattice_basis(spec: &LatticeSpec, dim: usize) -> Result<(String, LatticeBasis)> {
    match spec {
        LatticeSpec::Named(name) => {
            let mut chars = name.chars();
            let kind = chars.next().map(|c| c.to_ascii_uppercase());
            let rest: String = chars.collect();
            if rest != "n" && !rest.is_empty() {
                let rank: usize = rest
                    .parse()
                    .map_err(|_| Error::Parse(format!("unknown lattice {name:?}")))?;
                if rank != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: rank,
                    });
                }
            }
            let basis = match kind {
                Some('Z') => LatticeBasis::standard(dim),
                Some('A') => an_basis(dim)?,
                Some('D') => dn_basis(dim)?,
                _ => return Err(Error::Parse(format!("unknown lattice {name:?}"))),
            };
            Ok((format!("{}{dim}", kind.expect("matched")), basis))
        }
        LatticeSpec::Basis { basis } => {
            let vectors = basis
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| parse_rational(c))
                        .collect::<Result<Vec<_>>>()
                        .map(QVector)
                })
                .collect::<Result<Vec<_>>>()?;
            if vectors.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: vectors.len(),
                });
            }
            Ok(("custom".into(), LatticeBasis::new(vectors)?))
        }
    }
}

fn ambient_norm(spec: &NormSpec, m: usize) -> Result<PolyhedralNorm> {
    match spec {
        NormSpec::Named(name) => match name.to_ascii_lowercase().as_str() {
            "l1" => Ok(PolyhedralNorm::l1(m)),
            "linf" | "l_inf" | "linfinity" => Ok(PolyhedralNorm::l_infinity(m)),
            _ => Err(Error::Parse(format!("unknown norm {name:?}"))),
        },
        NormSpec::Forms { forms } => {
            let forms = forms
                .iter()
                .map(|row| {
                    if row.len() != m {
                        return Err(Error::DimensionMismatch {
                            expected: m,
                            found: row.len(),
                        });
                    }
                    row.iter()
                        .map(|c| parse_rational(c))
                        .collect::<Result<Vec<_>>>()
                        .map(LinearForm)
                })
                .collect::<Result<Vec<_>>>()?;
            validate_norm(m, &forms)
        }
    }
}

pub fn prepare(job: &JobSpec) -> Result<Problem> {
    if job.dim == 0 {
        return Err(Error::Parse("dim must be positive".into()));
    }
    let (lattice_name, basis) = lattice_basis(&job.lattice, job.dim)?;
    let ambient = ambient_norm(&job.norm, basis.ambient_dim())?;
    let norm = if lattice_name.starts_with('Z') {
        ambient.clone()
    } else {
        pullback_norm(&ambient, &basis)?
    };
    Ok(Problem {
        lattice_name,
        basis,
        ambient,
        norm,
    })
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub report: Report,
    pub svg: Option<String>,
}

/// Decomposes, verifies, then runs the requested analyses.
pub fn run(job: &JobSpec) -> Result<RunOutput> {
    let problem = prepare(job)?;
    let strategy: Strategy = job.adapted.parse()?;
    let tasks = job.task_set();
    let d = decompose(&problem.norm, strategy, job.seed)?;
    let record = verify(&d, job.trials)?;
    let mut rep = report::Report::new(&problem, strategy, &d, &record);
    let origin = QVector::zeros(d.dim());
    if tasks.contains(&Task::CoveringRadius) {
        rep.covering_radius = Some(report::covering(&covering_radius(&d), &problem.basis));
    }
    if tasks.contains(&Task::Voronoi) {
        let closed = voronoi_region(&d, &origin, true);
        let open = voronoi_region(&d, &origin, false);
        rep.regions = Some(report::regions(&d, &closed, &open)?);
    }
    if tasks.contains(&Task::DPoints) {
        rep.d_points = Some(report::d_point_block(&d_points(&d)?));
    }
    if tasks.contains(&Task::Vertices) {
        rep.vertices = Some(report::vertex_block(&voronoi_vertices(&d, &origin)?));
    }
    if tasks.contains(&Task::Euclidean) {
        rep.euclidean = Some(report::euclidean_block(&euclidean_comparison(&d, &problem.basis)?));
    }
    let svg = if tasks.contains(&Task::Svg) {
        if d.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: d.dim(),
            });
        }
        Some(svg::render(&d)?)
    } else {
        None
    };
    Ok(RunOutput { report: rep, svg })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn job(text: &str) -> JobSpec {
        JobSpec::from_json(text).unwrap()
    }

    #[test]
    fn parses_all_shapes() {
        let j = job(r#"{"dim":2,"norm":"linf"}"#);
        assert_eq!(j.lattice, LatticeSpec::Named("Zn".into()));
        assert_eq!(j.trials, 100);
        assert_eq!(j.task_set().len(), Task::ANALYSES.len());
        let j = job(
            r#"{"dim":2,"norm":{"forms":[["1","0"],["-1","0"],["0","1"],["0","-1"]]},
            "lattice":{"basis":[["1","1"],["1","-1"]]},"tasks":["decompose","d-points"],"seed":7}"#,
        );
        let p = prepare(&j).unwrap();
        assert_eq!(p.norm.forms().len(), 4);
        assert_eq!(j.task_set(), [Task::Decompose, Task::DPoints].into_iter().collect());
        assert!(JobSpec::from_json(r#"{"dim":2,"norm":"l1","bogus":1}"#).is_err());
    }

    #[test]
    fn dimension_mismatch() {
        let j = job(r#"{"dim":2,"norm":{"forms":[["1","0","0"],["-1","0","0"]]}}"#);
        let err = prepare(&j).unwrap_err();
        assert!(err.to_string().starts_with("dimension mismatch"), "{err}");
        let j = job(r#"{"dim":2,"norm":"l1","lattice":"A3"}"#);
        assert!(matches!(prepare(&j), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn square_lattice_linf_job() {
        let out = run(&job(r#"{"dim":2,"norm":"linf","tasks":["decompose","covering-radius","voronoi","d-points","vertices","svg"],"trials":10}"#)).unwrap();
        let r = &out.report;
        assert_eq!(r.orbits.len(), 1);
        assert!(r.checks.passed);
        assert_eq!(r.covering_radius.as_ref().unwrap().value, "1/2");
        assert_eq!(r.vertices.as_ref().unwrap().vertices.len(), 4);
        assert_eq!(r.d_points.as_ref().unwrap().dimension, 1);
        assert!(out.svg.unwrap().starts_with("<svg"));
    }

    #[test]
    fn d2_linf_job() {
        let out = run(&job(
            r#"{"dim":2,"norm":"linf","lattice":"Dn","tasks":["covering-radius"],"trials":5}"#,
        ))
        .unwrap();
        let p = prepare(&job(r#"{"dim":2,"norm":"linf","lattice":"Dn"}"#)).unwrap();
        assert_eq!(p.norm, PolyhedralNorm::l1(2));
        let cov = out.report.covering_radius.unwrap();
        assert_eq!(cov.value, "1");
        assert_eq!(cov.ambient_witness, vec!["1".to_string(), "0".to_string()]);
        assert_eq!(p.ambient.value(&QVector(vec![int(1), int(0)])), int(1));
    }
}

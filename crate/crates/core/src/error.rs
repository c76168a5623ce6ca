use thiserror::Error;

use crate::exact::QVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degenerate form")]
    DegenerateForm,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("polyhedron is unbounded along {ray}")]
    Unbounded { ray: QVector },

    #[error("polytope is not full-dimensional")]
    LowerDimensional,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("degenerate norm: forms do not span the dual space")]
    DegenerateNorm,

    #[error("not positive definite: N({witness}) <= 0")]
    NotPositiveDefinite { witness: QVector },

    #[error("incompatible adapted strategy: {0}")]
    IncompatibleStrategy(String),

    #[error("AHA not adapted: {0}")]
    NotAdapted(String),

    #[error("point {point} lies on a wall of hyperplane class {class}")]
    OnWall { class: usize, point: QVector },

    #[error("adjacency probe failed across facet {facet} of {space}")]
    AdjacencyProbeFailed { facet: usize, space: String },

    #[error("no initial VN-space found after {attempts} random points")]
    NoInitialSpace { attempts: usize },

    #[error("invalid symmetry: {0}")]
    InvalidSymmetry(String),

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("iteration limit reached: {0}")]
    IterationLimit(&'static str),

    #[error("decomposition is not face-to-face: {0}")]
    NotFaceToFace(String),

    #[error("{0}")]
    Io(String),
}

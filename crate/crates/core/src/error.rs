use thiserror::Error;

use crate::report::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("facet {facet} of dimension {dim} does not exist")]
    DanglingFacet { dim: usize, facet: usize },

    #[error("a {dim}-cell needs {expected} entries, got {actual}")]
    VertexArityMismatch {
        dim: usize,
        expected: usize,
        actual: usize,
    },

    #[error("vertex {vertex} appears twice in one cell")]
    DuplicateVertexInCell { vertex: usize },

    #[error("facets do not cover the vertex list: {0}")]
    FacetCoverage(String),

    #[error("vertex {0} does not exist")]
    UnknownVertex(usize),

    #[error("dimension {dim} outside the admissible range {min}..={max}")]
    BadDimension { dim: usize, min: usize, max: usize },

    #[error("the {dim}-chain is not a cycle")]
    NotACycle { dim: usize },

    #[error("chains of dimension {left} and {right} cannot be compared")]
    DimensionMismatch { left: usize, right: usize },

    #[error("involution is not free: {0}")]
    NotFree(String),

    #[error("{dim}-cell {cell} contains a pair of antipodal vertices")]
    LoopsWouldForm { dim: usize, cell: usize },

    #[error("edge {0}-{1} joins a vertex to its antipode")]
    LoopCreated(usize, usize),

    #[error("boundary is not symmetric: {0}")]
    BoundaryNotSymmetric(String),

    #[error("colouring is not boundary-antisymmetric: {0}")]
    ColouringNotBoundaryAntisymmetric(String),

    #[error("not a closed walk: {0}")]
    NotAClosedWalk(String),

    #[error("vertex {0} has no coordinates")]
    MissingCoordinates(usize),

    #[error("vertex {vertex} has norm {norm}, expected 1")]
    NotOnUnitSphere { vertex: usize, norm: f64 },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),

    #[error("verification failed at {stage}: {report}")]
    VerificationFailed {
        stage: String,
        report: ValidationReport,
    },

    #[error("input is not a quadrangulation: {0}")]
    InputNotQuadrangulation(ValidationReport),

    #[error("budget exhausted with {lower} <= chi <= {upper}")]
    BudgetExceeded { lower: usize, upper: usize },

    #[error("unknown graph vertex {0}")]
    UnknownLabel(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn verification(stage: impl Into<String>, report: ValidationReport) -> Self {
        Error::VerificationFailed {
            stage: stage.into(),
            report,
        }
    }
}

use thiserror::Error;

use crate::complex::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown wall `{0}`")]
    UnknownWall(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("malformed edge list: {0}")]
    MalformedEdges(String),
    #[error("invalid complex: {0}")]
    Invalid(Box<ValidationReport>),
    #[error("vertex set is empty")]
    EmptySet,
    #[error("set is not convex: the interval {x}..{y} contains {z}, which lies outside")]
    NotConvex { x: String, y: String, z: String },
    #[error("convex subset carries only an assumed certificate")]
    UnverifiedConvex,
    #[error("sets are not disjoint (both contain `{0}`)")]
    NotDisjoint(String),
    #[error("walls `{0}` and `{1}` cross")]
    WallsCross(String, String),
    #[error("wall `{0}` appears twice")]
    DuplicateWall(String),
    #[error("expected at least {expected} walls, got {got}")]
    TooFewWalls { expected: usize, got: usize },
    #[error("inconsistent nesting: `{token}` is nested in `{other}`")]
    InconsistentNesting { token: String, other: String },
    #[error("half-space system has no consistent orientation")]
    NoOrientation,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid sublinear function: {0}")]
    InvalidKappa(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

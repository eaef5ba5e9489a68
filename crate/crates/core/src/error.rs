use thiserror::Error;

/// Errors reported by the library. Infeasible / unbounded LPs are not errors;
/// they are reported in-band through [`crate::lp::LpStatus`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polytope is unbounded")]
    UnboundedPolytope,

    #[error("polytope is empty")]
    EmptyPolytope,

    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("the origin is not an interior point of the hull")]
    OriginNotInterior,

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("ball row {row} has right-hand side {rhs}, expected 1")]
    BallNotNormalized { row: usize, rhs: String },

    #[error("generators are linearly dependent")]
    DependentGenerators,

    #[error("expected {expected} generators in dimension {expected}, found {found}")]
    GeneratorCount { expected: usize, found: usize },

    #[error("n = {0} is odd; pad the graph first")]
    OddN(usize),

    #[error("sphere point {index} is not in convex position")]
    NotInConvexPosition { index: usize },

    #[error("k = {k} exceeds the number of vertices n = {n}")]
    KTooLarge { k: usize, n: usize },

    #[error("norm maximum {value} lies strictly between the NO threshold {no} and the YES threshold {yes}")]
    GapViolation {
        value: String,
        no: String,
        yes: String,
    },

    #[error("polytope presentation is not 0-symmetric")]
    NotSymmetric,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{facets} ball facets required, above the facet budget {budget}")]
    FacetBudgetExceeded { facets: u128, budget: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;

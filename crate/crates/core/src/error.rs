use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polytope is unbounded")]
    UnboundedPolytope,
    #[error("polytope is empty")]
    EmptyPolytope,
    #[error("polytope is not full-dimensional (affine dimension {affine_dim} < {dim})")]
    FullDimRequired { dim: usize, affine_dim: usize },
    #[error("required representation is missing and could not be computed")]
    MissingRepresentation,
    #[error("section is empty")]
    EmptySection,
    #[error("0 is not an interior point of the body")]
    ZeroNotInterior,
    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },
    #[error("basis rows are not orthonormal (deviation {deviation:e})")]
    IllConditionedBasis { deviation: f64 },
    #[error("vertex and halfspace representations disagree: {0}")]
    InconsistentRepresentation(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("enumeration budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("cover is not uniform")]
    NotUniform,
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("weights do not form a uniform cover: {0}")]
    WeightsInvalid(String),
    #[error("certificate program infeasible (min slack {min_slack:e})")]
    Infeasible { min_slack: f64 },
    #[error("function is not integrable: {0}")]
    NotIntegrable(String),
    #[error("quadrature needs {needed} points, budget is {budget}")]
    QuadratureBudgetExceeded { needed: u128, budget: u128 },
    #[error("vector system is not isotropic (residual {residual:e})")]
    NotIsotropic { residual: f64 },
    #[error("sphere measure is degenerate (smallest eigenvalue {min_eigenvalue:e})")]
    DegenerateMeasure { min_eigenvalue: f64 },
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

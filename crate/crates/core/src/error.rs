use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("map is not invertible")]
    NotInvertible,
    #[error("twisting map failed verification; pass the override to build it anyway")]
    UnverifiedTwist(Box<Report>),
    #[error("axiom violated: {}", .0.check)]
    AxiomViolation(Box<Report>),
    #[error("condition violated: {}", .0.check)]
    ConditionViolated(Box<Report>),
    #[error("hexagon violated: {}", .0.check)]
    HexagonViolated(Box<Report>),
    #[error("not splittable: {}", .0.check)]
    NotSplittable(Box<Report>),
    #[error("compatibility violated: {}", .0.first_failure().map_or("?", |r| r.check.as_str()))]
    CompatibilityViolated(Box<Report>),
    #[error("differential compatibility violated: {}", .0.first_failure().map_or("?", |r| r.check.as_str()))]
    DiffCompatViolated(Box<Report>),
    #[error("datum violated: {}", .0.first_failure().map_or("?", |r| r.check.as_str()))]
    DatumViolated(Box<Report>),
    #[error("cocycle violated: {}", .0.first_failure().map_or("?", |r| r.check.as_str()))]
    CocycleViolated(Box<Report>),
    #[error("antipode has no inverse")]
    NoAntipodeInverse,
    #[error("coaction and action act on different sides")]
    SideMismatch,
    #[error("the third twisting map must be the flip")]
    FlipRequired,
    #[error("scalar not representable in the {0} backend")]
    BackendUnavailable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
}

impl Error {
    /// The verification report carried by axiom-style errors.
    pub fn report(&self) -> Option<&Report> {
        match self {
            Error::UnverifiedTwist(r)
            | Error::AxiomViolation(r)
            | Error::ConditionViolated(r)
            | Error::HexagonViolated(r)
            | Error::NotSplittable(r)
            | Error::CompatibilityViolated(r)
            | Error::DiffCompatViolated(r)
            | Error::DatumViolated(r)
            | Error::CocycleViolated(r) => Some(r),
            _ => None,
        }
    }

    /// Input problems as opposed to mathematical failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch(_) | Error::Parse(_) | Error::UnknownObject(_) | Error::BackendUnavailable(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

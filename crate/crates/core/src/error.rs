use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("degenerate slope: relative rank is zero")]
    DegenerateSlope,

    #[error("not a valid moduli vector: {0}")]
    NotModuliVector(String),

    #[error("the zero vector has no canonical form")]
    ZeroVector,

    #[error("unsupported surface kind: {0}")]
    UnsupportedKind(String),

    /// A lattice-visible hypothesis of a statement failed. `check` names it.
    #[error("hypothesis violated: {check}")]
    HypothesisViolation { check: String },

    #[error("empty moduli space: <v^2> = {0} < 0")]
    EmptyModuli(String),

    #[error("invalid setup: {0}")]
    InvalidSetup(String),

    #[error("non-spherical mirror: <u^2> = {0}, expected -2")]
    NonSphericalMirror(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("cannot parse {what} from '{token}'")]
    Parse { what: &'static str, token: String },
}

impl Error {
    pub(crate) fn hypothesis(check: impl Into<String>) -> Self {
        Error::HypothesisViolation {
            check: check.into(),
        }
    }
}

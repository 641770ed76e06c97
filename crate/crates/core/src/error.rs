use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected} coordinates, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("operation requires a finite group, got shape {0}")]
    InfiniteShape(String),

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("operation requires a nonempty elliptic group")]
    EmptyCarrier,

    #[error("elliptic group axioms fail: {0}")]
    AxiomFailure(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("hom-set is empty")]
    EmptyHomSet,

    #[error("no closed form: {0}")]
    NoClosedForm(String),

    #[error("modulus {0} is neither 0 nor a prime power")]
    NotPrimePower(u64),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("0 is the circ-unit; it is neither prime nor composite")]
    CircUnit,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("{0} is not a prime in the supported range 5..=97")]
    UnsupportedField(u64),

    #[error("the cubic is singular at {0}")]
    SingularCurve(String),

    #[error("point {0} is not on the curve")]
    PointNotOnCurve(String),

    #[error("the curve has no rational points")]
    PointlessCurve,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

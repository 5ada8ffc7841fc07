use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("context mismatch: {0}")]
    Context(String),
    #[error("specialization vanishes on denominator {denominator}")]
    Specialization { denominator: String },
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("bound violated: {0}")]
    BoundViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("field too small: {0}")]
    ExtendField(String),
    #[error("inseparable residue field; root exponent {required_e} needed")]
    Separability { required_e: u32 },
    #[error("element is not in the image of the ring map")]
    NotInImage,
    #[error("ideal is not zero-dimensional")]
    PositiveDimensional,
    #[error("Noether direction is not finite: {0}")]
    Finiteness(String),
    #[error("quotient by the zero ideal is undefined")]
    UndefinedQuotient,
    #[error("scaling element lies in the ideal")]
    InvalidScaling,
    #[error("order is not integrally closed")]
    NotClosed,
    #[error("unsupported circuit class: {0}")]
    UnsupportedClass(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no primitive cube root of unity over {0}")]
    NoCubeRoot(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-exact division: {0}")]
    NonExactDivision(String),
    #[error("substitution needs the inverse of a non-monomial image for `{0}`")]
    NonInvertibleImage(String),
    #[error("negative exponent on non-invertible variable `{0}`")]
    NegativeExponent(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("moduli equation violated: residual {0}")]
    ModuliEquation(String),
    #[error("not flat: {0}")]
    NotFlat(String),
    #[error("points not rational over the ground field: {0}")]
    IrrationalPoints(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("interpolation failed: {0}")]
    Interpolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the computational modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative value {0} has no real root")]
    NegativeRadicand(String),
    #[error("root index must be positive")]
    ZeroRootIndex,
    #[error("operands live in different quadratic fields (sqrt({0}) and sqrt({1}))")]
    MixedRadicands(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid number literal `{0}`")]
    BadNumber(String),
    #[error("a bundle needs at least one piece")]
    EmptyBundle,
    #[error("piece rank must be at least 1")]
    ZeroRank,
    #[error("multiplicity at the point must be at least 1")]
    ZeroMultiplicity,
    #[error("{0}")]
    InvalidInput(String),
    #[error("genus must be at least {min}, got {got}")]
    GenusTooSmall { min: u32, got: u32 },
    #[error("a = {a} is below the validity threshold 1 + 2*sqrt(g(g-1)) = {threshold}")]
    BelowVojtaThreshold { a: String, threshold: String },
    #[error("d = {d} is below the threshold floor(3g/2) + 3 = {threshold}")]
    BelowKernelThreshold { d: i64, threshold: i64 },
    #[error("n = {n} is a pole of the slope formula (n*a + 1 - g - n = 0)")]
    Pole { n: u64 },
    #[error("no tangency with the curve for b in (1, 2]")]
    NoTangency,
    #[error("{0} is not representable as an element of a single quadratic field")]
    NotRepresentable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("inactive pair {0}")]
    InactivePair(&'static str),
    #[error("degenerate bracket ({0} {0})")]
    DegenerateBracket(&'static str),
    #[error("degenerate operator on pair {0}")]
    DegenerateOperator(&'static str),
    #[error("inexact division")]
    InexactDivision,
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("order mismatch: {0}")]
    OrderMismatch(String),
    #[error("transvectant index out of range: r = {r} with orders {m}, {n}")]
    TransvectantIndex { m: u32, n: u32, r: u32 },
    #[error("no quadratic syzygies below weight 2")]
    WeightTooSmall,
    #[error("inadmissible syzygy index: {0}")]
    Inadmissible(String),
    #[error("order too small for closed formula")]
    OrderTooSmall,
    #[error("operator chain inconsistent: {0}")]
    ChainInconsistent(String),
    #[error("not a triad: ({0}, {1}, {2})")]
    NotTriad(String, String, String),
    #[error("invalid projection quantum number: {0}")]
    InvalidProjection(String),
    #[error("cannot add surds with radicands {0} and {1}")]
    UnlikeRadicands(String, String),
    #[error("cannot extract square root of {0}")]
    SquareRoot(String),
    #[error("normalization mismatch: {0}")]
    NormalizationMismatch(String),
    #[error("inputs are not transvectants of a common pair")]
    NotTransvectants,
    #[error("syzygy table has no nonzero coefficient")]
    ZeroTable,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partitions of different sizes: {0} and {1}")]
    SizeMismatch(u32, u32),
    #[error("projection not unique: multiplicity {0}")]
    ProjectionNotUnique(u64),
    #[error("projection reconstruction failed: {0}")]
    Reconstruction(String),
    #[error("anchor mismatch: {0}")]
    Anchor(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown suite {0}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;

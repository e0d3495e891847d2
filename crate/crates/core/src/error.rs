use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field context mismatch: sqrt({left}) vs sqrt({right})")]
    FieldMismatch { left: i64, right: i64 },

    #[error("radicand {0} is a perfect square; Q(sqrt({0})) is not a quadratic extension")]
    SquareRadicand(i64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("basis index {index} out of range for level {level} (must be < 2^{level})")]
    IndexOutOfRange { index: u64, level: u32 },

    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),

    #[error("level {0} exceeds the supported maximum of {max}", max = crate::twist::MAX_LEVEL)]
    LevelTooLarge(u32),

    #[error("element does not belong to this algebra: {0}")]
    ForeignElement(String),

    #[error("result is not a scalar multiple of the unit")]
    NotScalar,

    #[error(
        "dimension {dim} exceeds the table cap {cap}; use streaming output \
         (`table --stream`) or raise CDTWIST_TABLE_CAP"
    )]
    TableCapExceeded { dim: u64, cap: u64 },

    #[error("operation requires coefficients with rational coordinates")]
    NoRationalCoordinates,

    #[error("parse error: {0}")]
    Parse(String),
}

use thiserror::Error;

/// Errors raised by field, form and quaternion operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("Laurent element `{0}` is not a monomial and cannot be inverted exactly")]
    NonInvertibleLaurentElement(String),
    #[error("operands do not belong to the same field")]
    FieldMismatch,
    #[error("operation is undefined at the zero element")]
    ZeroElement,
    #[error("ordering does not belong to this field")]
    OrderingFieldMismatch,
    #[error("field is not a Laurent series field")]
    NotLaurentField,
    #[error("not an extension: {0}")]
    NotAnExtension(String),
    #[error("residue computation not representable: {0}")]
    UndecidableRepresentation(String),
    #[error("invalid field tower: {0}")]
    InvalidTower(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("quaternion is not invertible (reduced norm is zero)")]
    NonInvertible,
    #[error("involution parameter u must be a pure invertible quaternion")]
    NonInvertibleU,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("a = {0} is already a square and has no representable root in the base field")]
    NotSplitByL(String),
    #[error("splitting field is not formally real: {0}")]
    NonRealSplittingField(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("{numerator} is not divisible by {denominator}")]
    NonDivisible { numerator: u64, denominator: u64 },
    #[error("{0} is not a power of two")]
    NotPowerOfTwo(u64),
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("invalid quadratic form: {0}")]
    InvalidForm(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;

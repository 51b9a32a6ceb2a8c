use thiserror::Error;

use crate::bits::BitVector;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("bit string {0:?} is not a 0/1 string of 1..=64 characters")]
    BadBitString(String),

    #[error("length mismatch: expected {expected} bits, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("expected {expected} strands, got {got}")]
    WrongCount { expected: usize, got: usize },

    #[error("index {0} appears more than once")]
    DuplicateIndex(BitVector),

    #[error("data-field {0} appears more than once")]
    DuplicateData(BitVector),

    #[error("set sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("system parameters of the two operands differ")]
    ParamMismatch,

    #[error("a code needs at least two codewords, got {0}")]
    TooFewCodewords(usize),

    #[error("enumeration needs {required} items, cap is {cap}")]
    BudgetExceeded { required: u128, cap: u128 },

    #[error("only e_d = 0 is supported here (got e_d = {0})")]
    UnsupportedEd(usize),

    #[error("majority is ambiguous for data-field {0}")]
    AmbiguousMajority(BitVector),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("word list is not closed under addition")]
    NotLinear,

    #[error("invalid inner code: {0}")]
    InvalidInner(String),

    #[error("complement window {window} exceeds index length {index_len}")]
    OverlapWindow { window: usize, index_len: usize },

    #[error("unsupported distance d = {0}")]
    UnsupportedD(usize),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("distinct-data space is empty: 2^(L-l) < M")]
    EmptySpace,

    #[error("invalid index code: {0}")]
    InvalidCode(String),

    #[error("parse error: {0}")]
    Parse(String),
}

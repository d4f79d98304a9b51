use num_bigint::BigUint;
use thiserror::Error;

use crate::model::Interval;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid chain parameters: {0}")]
    InvalidParams(String),

    #[error("expected {expected} membership levels, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("level {level} at point {point} is outside 1..={m}")]
    LevelOutOfRange {
        point: usize,
        level: usize,
        m: usize,
    },

    #[error("not normal: no point reaches level {m}")]
    NotNormal { m: usize },

    #[error("not unimodal: membership changes direction at point {point}")]
    NotUnimodal { point: usize },

    #[error("alpha-cut at level {level} is not contained in the cut at level {below}")]
    NotNested { level: usize, below: usize },

    #[error("level-1 cut must be [0,{n}], found {found}")]
    BaseCutNotFull { n: usize, found: Interval },

    #[error("invalid interval [{lo},{hi}] on chain 0..={n}")]
    InvalidInterval { lo: usize, hi: usize, n: usize },

    #[error("chain mismatch: (n={left_n}, m={left_m}) vs (n={right_n}, m={right_m})")]
    ChainMismatch {
        left_n: usize,
        left_m: usize,
        right_n: usize,
        right_m: usize,
    },

    #[error("index out of range [0,{max}]: {index}")]
    IndexOutOfRange { index: BigUint, max: BigUint },

    #[error("inconsistent interval order: {0}")]
    InconsistentOrder(String),

    #[error("instance has {count} dfns, above the enumeration cap of {cap}")]
    InstanceTooLarge { count: BigUint, cap: u64 },

    #[error("index function {name} produced {value}, outside [0,{k}]")]
    RangeViolation {
        name: String,
        value: String,
        k: BigUint,
    },

    #[error("index function {name} has arity {found}, expected {expected}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("exhaustive check over {pairs} pairs exceeds the cap of {cap}")]
    CapExceeded { pairs: BigUint, cap: u64 },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

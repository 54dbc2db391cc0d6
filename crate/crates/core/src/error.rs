use thiserror::Error;

/// Errors raised while building or analysing groups, sets and reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group table: {0}")]
    InvalidTable(#[from] TableViolation),

    #[error("permutation generator {index} has degree {found}, expected {expected}")]
    PermutationDegree { index: usize, found: usize, expected: usize },

    #[error("permutation generator {index} is not a bijection of 0..{degree}")]
    NotAPermutation { index: usize, degree: usize },

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("element index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("operands live in different groups")]
    GroupMismatch,

    #[error("group of order {order} exceeds the cap of {cap}; rerun with a larger cap (e.g. --cap {order})")]
    CapExceeded { order: usize, cap: usize },

    #[error("function is not constant on conjugacy classes: values at {x} and {y} differ")]
    NotClassFunction { x: usize, y: usize },

    #[error("phase vector is not a homomorphism to the circle group (fails at {x}, {y})")]
    NotHomomorphism { x: usize, y: usize },

    #[error("character table computation failed after {attempts} seeds: {reason}")]
    CharacterTable { attempts: u32, reason: String },

    #[error("span of {size} characters exceeds the guard of {limit}")]
    SpanGuard { size: usize, limit: usize },

    #[error("{0} must be positive")]
    NonPositive(&'static str),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("no radius in (1, 2] satisfies the regularity bounds (best margin {best_margin:.3e})")]
    NoRegularRadius { best_margin: f64 },

    #[error("containment failed at stage `{stage}`: element {witness} escapes")]
    ContainmentFailure { stage: String, witness: usize },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// The first axiom a raw multiplication table violates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableViolation {
    #[error("table is empty")]
    Empty,
    #[error("row {row} has length {len}, expected {order}")]
    Ragged { row: usize, len: usize, order: usize },
    #[error("entry ({row}, {col}) = {value} is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("not a Latin square: row {row} repeats value {value}")]
    RowRepeat { row: usize, value: usize },
    #[error("not a Latin square: column {col} repeats value {value}")]
    ColumnRepeat { col: usize, value: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("not associative: ({x}*{y})*{z} != {x}*({y}*{z})")]
    NonAssociative { x: usize, y: usize, z: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("field order {q} exceeds the supported bound {bound}")]
    FieldTooLarge { q: u128, bound: u128 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("element code {code} is not a valid element of F_{q}")]
    InvalidElement { code: u32, q: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrices belong to different fields (F_{0} vs F_{1})")]
    FieldMismatch(u64, u64),
    #[error("matrix is singular")]
    Singular,
    #[error("division by zero field element")]
    DivisionByZero,
    #[error("invalid cycle list: {0}")]
    InvalidCycles(String),
    #[error("cannot span a subspace from an empty or all-zero set of vectors")]
    EmptySpan,
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("enumeration budget exceeded: needs {needed}, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("closure cap {cap} exceeded")]
    ClosureCapExceeded { cap: u64 },
    #[error("unknown group family: {0}")]
    UnknownFamily(String),
    #[error("|H| = {h} does not divide |G| = {g}")]
    NotDivisible { g: u128, h: u128 },
    #[error("thin parameters: s = {s}, t = {t} (both must be at least 2)")]
    ThinParameters { s: u64, t: u64 },
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("invalid collineation: {0}")]
    InvalidCollineation(String),
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("elements belong to different groups")]
    ParentMismatch,
    #[error("malformed presentation: {0}")]
    Malformed(String),
    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("elements do not commute")]
    NotCommuting,
    #[error("invalid variant {variant:?} for p = {p}")]
    InvalidVariant { variant: String, p: u32 },
    #[error("unsupported prime {0}")]
    UnsupportedPrime(u32),
    #[error("group order {order} exceeds the cap {cap}")]
    SizeCap { order: u64, cap: u64 },
    #[error("class cap {0} reached before the quotient stabilised")]
    ClassCap(usize),
    #[error("search budget of {0} nodes exhausted")]
    SearchBudget(u64),
    #[error("premise violated: {0}")]
    Premise(String),
    #[error("consistency guard failed: {0}")]
    Guard(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
}

pub type Result<T> = std::result::Result<T, Error>;

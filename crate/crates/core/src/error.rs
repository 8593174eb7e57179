use crate::construction::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("{0} is not a unit of A")]
    NotAUnit(String),
    #[error("{value} is not divisible by t^{exponent} in A")]
    NotDivisible { value: String, exponent: u32 },
    #[error("index {index} out of range (largest allowed {max})")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("level {level} out of range (top level {top})")]
    LevelOutOfRange { level: usize, top: usize },
    #[error("element does not evaluate to zero in the residue field")]
    NotInKernel,
    #[error("element is not in the maximal ideal M")]
    NotInM,
    #[error("valuation is at least {cap}")]
    ValuationCapExceeded { cap: u32 },
    #[error("rewriting needs levels beyond the top level {top}")]
    LevelBudgetExceeded { top: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown index {index} in `{name}{index}` (largest allowed {max})")]
    UnknownIndex { name: char, index: usize, max: usize },
    #[error("invalid construction parameters: {}", format_violations(.0))]
    InvalidParams(Vec<Violation>),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("operands live in different base rings")]
    RingMismatch,
    #[error("{0} is not an element of A")]
    NotInBaseRing(String),
    #[error("{0} is not an element of C")]
    NotInC(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

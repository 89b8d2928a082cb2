use thiserror::Error;

/// Errors raised by the algebra, construction and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(String, String),
    #[error("series has a nonzero constant term; exp_positive needs f(0) = 0")]
    NonzeroConstant,
    #[error("time index {0} is not an odd positive integer")]
    InvalidTimeIndex(i64),
    #[error("parts {0:?} do not form a strict partition")]
    NonStrict(Vec<u32>),
    #[error("weight {needed} exceeds cutoff {cutoff}")]
    CutoffExceeded { needed: u32, cutoff: u32 },
    #[error("denominator content vanishes for parameter {param} at row {row}, cell {cell}")]
    ContentZero { param: String, row: usize, cell: u32 },
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("symbol is not in the odd subalgebra (iota(a) != -a)")]
    NotInAlgebra,
    #[error("operator window {have} is insufficient; {needed} required")]
    InsufficientWindow { needed: u32, have: u32 },
    #[error("series cutoff {have} is insufficient; {needed} required")]
    InsufficientCutoff { needed: u32, have: u32 },
    #[error("rational function of D has a pole at exponent {0}")]
    EigenvaluePole(i64),
    #[error("series is not in the span of Q-functions at weight {0}")]
    NotInQSpan(u32),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

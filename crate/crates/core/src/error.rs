use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OperatorError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is empty")]
    Empty,
    #[error("asymmetry {measured:.3e} exceeds tolerance {allowed:.3e}")]
    AsymmetryExceedsTolerance { measured: f64, allowed: f64 },
    #[error("eigensolver failure: {0}")]
    EigensolverFailure(String),
    #[error("function undefined at eigenvalue {0}")]
    FunctionUndefinedAtEigenvalue(f64),
    #[error("resolvent requested on the real axis (Im z = 0)")]
    RealShift,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid interval [{lo}, {hi}]")]
    BadInterval { lo: f64, hi: f64 },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid Young diagram {rows:?}: {reason}")]
    InvalidDiagram { rows: Vec<usize>, reason: &'static str },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error(
        "insufficient precision: error bound {bound:e} exceeds 2^-30 of result {value:e} at {bits} bits"
    )]
    InsufficientPrecision { bits: u32, bound: f64, value: f64 },

    #[error("no convergence after {iterations} iterations (tail bound {tail:e})")]
    NoConvergence { iterations: usize, tail: f64 },

    #[error("crossing of {fraction}/k not bracketed on [{t_min}, {t_max}]")]
    NotBracketed { fraction: f64, t_min: f64, t_max: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(msg: impl Into<String>) -> Error {
    Error::OutOfRange(msg.into())
}

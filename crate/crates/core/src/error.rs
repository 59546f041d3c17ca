use thiserror::Error;

/// Errors raised by the symgraph library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid graph parameters k={k}, r={r}: {reason}")]
    InvalidParams {
        k: u32,
        r: u32,
        reason: &'static str,
    },

    #[error("values live in different rings: sqrt({left}) vs sqrt({right})")]
    MismatchedRing { left: u64, right: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("spectral operations need Q >= 2, got Q = {q}")]
    SpectralUnavailable { q: u64 },

    #[error("boundary ray of depth {got} is too short, need depth > {needed}")]
    InsufficientDepth { needed: usize, got: usize },

    #[error("c-function has a pole at lambda = {lambda}")]
    Pole { lambda: f64 },

    #[error("nonradial inversion is only available for k <= r (k={k}, r={r})")]
    AtomUnsupported { k: u32, r: u32 },

    #[error("quadrature did not converge: achieved error {achieved:e} > tolerance {tol:e}")]
    Quadrature { achieved: f64, tol: f64 },

    #[error("stencil exceeds table: {0}")]
    StencilExceedsTable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("range too large: {0}")]
    RangeTooLarge(String),

    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

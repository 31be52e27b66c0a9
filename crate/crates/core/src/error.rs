use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("state is not normalized (norm² = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("tridiagonal eigensolver did not converge (2j = {twice_j}, λ = {lambda}, residual {residual:e})")]
    NonConvergence {
        twice_j: u32,
        lambda: f64,
        residual: f64,
    },

    #[error("{what} = {value} outside [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("spin j = {twice_j}/2 has no m = 0 level")]
    HalfIntegerSpin { twice_j: u32 },

    #[error("need at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("k = {k} is odd; the parametric boundary exists only for even k (use the closed-form criterion)")]
    OddGroupSize { k: u32 },

    #[error("root bracket failure while resolving {0}")]
    Bracket(&'static str),
}

impl Error {
    /// True for failures of the numerical machinery rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence { .. } | Error::Bracket(_))
    }
}

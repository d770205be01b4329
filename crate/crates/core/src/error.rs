use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which side of an asymptotic validity condition a formula needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// The ratio must be large (at least the high threshold).
    Dominant,
    /// The ratio must be small (at most the low threshold).
    Negligible,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::Dominant => f.write_str("dominant"),
            Regime::Negligible => f.write_str("negligible"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "root finder did not converge after {iterations} iterations \
         (max residual {max_residual:e})"
    )]
    NoConvergence {
        iterations: usize,
        roots: Vec<Complex64>,
        max_residual: f64,
    },

    #[error("{operation} is not supported for n = {n}")]
    Unsupported { operation: &'static str, n: u32 },

    #[error("pole: {0}")]
    Pole(&'static str),

    #[error("validity ratio {ratio:.6} rejected for the {regime} regime (threshold {threshold})")]
    ValidityGate {
        ratio: f64,
        threshold: f64,
        regime: Regime,
    },

    #[error("parameter `{0}` must be nonzero here")]
    ZeroParameter(&'static str),

    #[error("z = 0 lies outside the domain of the map when a != 0")]
    OutsideDomain,

    #[error("grid of {cells} cells exceeds the budget of {budget}")]
    BudgetExceeded { cells: usize, budget: usize },

    #[error("every one of the {0} samples failed")]
    AllSamplesFailed(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn finite(z: Complex64, what: &'static str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}

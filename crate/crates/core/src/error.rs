//! Error type shared by every module.

/// Errors surfaced by the state constructors, the eigensolver and the
/// crossover solver.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument fell outside its mathematical domain.
    #[error("{name} = {value} outside {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// A conditional state was requested where the heralding probability
    /// vanishes (`lambda * (1 - T) = 0`), so the state is undefined.
    #[error("conditional state undefined: detection probability is zero (lambda*(1-T) = 0)")]
    ZeroDetectionProbability,

    /// The eigensolver was handed a matrix that is not symmetric.
    #[error("matrix not symmetric: max |a_ij - a_ji| = {max_asym:e}")]
    NonSymmetric { max_asym: f64 },

    /// The Jacobi iteration did not reach its off-diagonal target.
    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    /// A root bracket with no sign change was passed to the bisection solver.
    #[error("no sign change of f - g over [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    /// Malformed textual input (CLI-style selectors).
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

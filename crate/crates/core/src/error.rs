use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter set violates a physical invariant.
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("1F1 pole: b = {0} is a non-positive integer")]
    Pole(f64),

    #[error("biconfluent Heun series requires alpha > -1, got {0}")]
    HeunBranch(f64),

    /// Series tail bound exceeded the allowed tolerance.
    #[error("series truncation: tail bound {tail:.3e} exceeds {tol:.1e} at rho = {rho}")]
    Truncation { rho: f64, tail: f64, tol: f64 },

    /// Morse channel has no bound state with the requested quantum number.
    #[error("no bound state: sqrt(D)/sigma - n_z - 1/2 = {0} <= 0")]
    NoBoundState(f64),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Bracket expansion never produced a sign change.
    #[error("no root: {0}")]
    NoRoot(String),

    #[error("index {k} out of range for operator of dimension {n}")]
    OutOfRange { k: usize, n: usize },

    #[error("iteration failed to converge: {0}")]
    Convergence(String),

    #[error("integration error: {0}")]
    Integration(String),
}

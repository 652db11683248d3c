//! Error type shared by every module in the crate.
//!
//! Validation failures (bad transition labels, unnormalized states, malformed
//! grids) are separated from numerical failures (quadrature non-convergence,
//! norm drift, degenerate fits) so that callers can map them to distinct
//! exit paths.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Transition labels violate dipole selection rules or parity.
    #[error("invalid transition: {0}")]
    InvalidTransition(String),

    /// Initial-state amplitudes are malformed or not normalized.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// Detuning-window (scheme) parameters are inconsistent.
    #[error("invalid scheme: {0}")]
    InvalidScheme(String),

    /// A grid or simulation-control parameter is out of range.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// An input lies outside the mathematical domain of the requested quantity.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative or adaptive numerical procedure failed to converge.
    #[error("convergence failure: {0}")]
    Convergence(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by constructors, solvers and integrators.
///
/// Diagnostic payloads are carried as `f64` regardless of the working scalar
/// type; they are for reporting, not for further arithmetic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gradient is not spacelike: |Du|^2 = {grad_norm_sq} (must be < 1)")]
    NotSpacelike { grad_norm_sq: f64 },

    #[error("cone slope {slope} outside (0, 1)")]
    SlopeOutOfRange { slope: f64 },

    #[error("bad boundary data: R = {radius}, M = {height} (need 0 < M < R)")]
    BadBoundaryData { radius: f64, height: f64 },

    #[error("integrand singular near r = {at}: 1 - u'^2 below edge tolerance")]
    SingularIntegrand { at: f64 },

    #[error("quadrature tolerance not met: requested {requested}, achieved {achieved}")]
    ToleranceNotMet { requested: f64, achieved: f64 },

    #[error("no closed-form resistance for profile kind `{kind}`")]
    NoClosedForm { kind: &'static str },

    #[error("gradient not admissible for the requested density at ({x}, {y})")]
    NotAdmissible { x: f64, y: f64 },

    #[error("{name} = {value} outside the admissible domain")]
    DomainError { name: &'static str, value: f64 },

    #[error("root not bracketed (monotone range violated); internal error")]
    RootNotBracketed,

    #[error("zero gradient: reflected ray is vertical, no finite slope")]
    ZeroGradient,

    #[error("minimizer failed to converge within {iters} iterations")]
    NonConvergence { iters: usize },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

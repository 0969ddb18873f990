use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violated a precondition; the message names it.
    #[error("domain error: {0}")]
    Domain(String),
    /// No finite truncation point makes the envelope tail small enough.
    #[error("tail-unbounded: {0}")]
    TailUnbounded(String),
    /// The adaptive quadrature ran out of panels before reaching tolerance.
    #[error("max-subdivision: {panels} panels, error estimate {error_estimate:e} above target {target:e}")]
    MaxSubdivision {
        panels: usize,
        error_estimate: f64,
        target: f64,
    },
    /// The integrand exceeded its declared growth envelope.
    #[error("envelope violated at u = {u}: |g(u)| = {value:e} > bound {bound:e}")]
    EnvelopeViolated { u: f64, value: f64, bound: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

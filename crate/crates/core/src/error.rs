use thiserror::Error;

/// Errors raised by the oracle, the asymptotic evaluators and the scan drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter eps = {0} outside (0, 1]")]
    InvalidEps(f64),

    #[error("degenerate modulus (eps = 0): K diverges")]
    DegenerateModulus,

    #[error("series anchored at eps -> 0 requires eps < 1, got {0}")]
    SeriesDomain(f64),

    #[error("order {order} not supported (expected {expected})")]
    InvalidOrder { order: u32, expected: &'static str },

    #[error("integration failure: step size underflow at t = {reached_t}")]
    IntegrationFailure { reached_t: f64 },

    #[error("integration horizon |t| = {t} exceeds 2T = {limit}")]
    HorizonExceeded { t: f64, limit: f64 },

    #[error("quadrature did not converge (estimated error {abs_err:e})")]
    QuadratureFailure { abs_err: f64 },

    #[error("mu = {0} outside the supported range")]
    InvalidMu(f64),

    #[error("flat error ladder: cannot fit an order")]
    FlatErrorLadder,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

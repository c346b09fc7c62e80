//! Parameter conversions between `eps`, the modulus `m = 1 - eps` and the
//! auxiliary `mu = 1 - sqrt(1 - eps)`.

use crate::error::{Error, Result};

/// The small parameter of the problem together with its derived forms.
///
/// `eps = 0` is representable only through [`ModulusSpec::separatrix`]; every
/// other constructor requires `0 < eps <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusSpec {
    eps: f64,
    m: f64,
    mu: f64,
}

impl ModulusSpec {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(Error::InvalidEps(eps));
        }
        // 1 - sqrt(1 - eps) without cancellation for small eps.
        let mu = eps / (1.0 + (1.0 - eps).sqrt());
        Ok(Self {
            eps,
            m: 1.0 - eps,
            mu,
        })
    }

    /// Builds the modulus from `mu`, i.e. `eps = mu (2 - mu)`.
    pub fn from_mu(mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu <= 1.0) {
            return Err(Error::InvalidMu(mu));
        }
        let eps = mu * (2.0 - mu);
        Ok(Self {
            eps,
            m: 1.0 - eps,
            mu,
        })
    }

    /// The `m = 1` limit: sn degenerates to the separatrix `tanh t`.
    pub fn separatrix() -> Self {
        Self {
            eps: 0.0,
            m: 1.0,
            mu: 0.0,
        }
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Complementary modulus `k' = sqrt(eps)`.
    pub fn k_prime(&self) -> f64 {
        self.eps.sqrt()
    }

    pub fn is_degenerate(&self) -> bool {
        self.eps == 0.0
    }

    pub fn log_eps(&self) -> f64 {
        self.eps.ln()
    }
}

//! Expansion about the separatrix `tanh t`: `u = tanh t + eps u1 + eps^2 u2`,
//! `u_n = a_n / cosh^2 t`.

use crate::error::{Error, Result};
use crate::modulus::ModulusSpec;

/// Numerators `a_n(t)` of the outer corrections, truncated at `order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OuterExpansion {
    order: u32,
}

impl OuterExpansion {
    pub fn new(order: u32) -> Result<Self> {
        if order > 2 {
            return Err(Error::InvalidOrder {
                order,
                expected: "0..=2",
            });
        }
        Ok(Self { order })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `a1 = sinh(2t)/8 - t/4`
    pub fn a1(t: f64) -> f64 {
        (2.0 * t).sinh() / 8.0 - t / 4.0
    }

    /// `a2 = -(t^2/16) tanh t - sinh(4t)/256 + 5 sinh(2t)/64 - 9t/64`
    pub fn a2(t: f64) -> f64 {
        -(t * t / 16.0) * t.tanh() - (4.0 * t).sinh() / 256.0 + 5.0 * (2.0 * t).sinh() / 64.0
            - 9.0 * t / 64.0
    }

    pub fn a1_prime(t: f64) -> f64 {
        ((2.0 * t).cosh() - 1.0) / 4.0
    }

    pub fn a2_prime(t: f64) -> f64 {
        let th = t.tanh();
        let sech2 = 1.0 - th * th;
        -(t / 8.0) * th - (t * t / 16.0) * sech2 - (4.0 * t).cosh() / 64.0
            + 5.0 * (2.0 * t).cosh() / 32.0
            - 9.0 / 64.0
    }

    /// `u1 = a1 / cosh^2 t`, rewritten as `tanh t / 4 - t sech^2 t / 4` so it
    /// stays finite for large `|t|`.
    pub fn u1(t: f64) -> f64 {
        let th = t.tanh();
        let sech2 = sech_sq(t);
        0.25 * th - 0.25 * t * sech2
    }

    /// `u2 = a2 / cosh^2 t`, using `sinh(4t) / cosh^2 t = 4 tanh t cosh 2t`.
    pub fn u2(t: f64) -> f64 {
        let th = t.tanh();
        let sech2 = sech_sq(t);
        -(t * t / 16.0) * th * sech2 - th * (2.0 * t).cosh() / 64.0 + 5.0 * th / 32.0
            - 9.0 * t * sech2 / 64.0
    }

    pub fn u1_prime(t: f64) -> f64 {
        0.5 * t * sech_sq(t) * t.tanh()
    }

    pub fn u2_prime(t: f64) -> f64 {
        let sech2 = sech_sq(t);
        Self::a2_prime(t) * sech2 - 2.0 * t.tanh() * Self::u2(t)
    }

    pub fn eval(&self, t: f64, eps: f64) -> f64 {
        let mut u = t.tanh();
        if self.order >= 1 {
            u += eps * Self::u1(t);
        }
        if self.order >= 2 {
            u += eps * eps * Self::u2(t);
        }
        u
    }

    pub fn derivative(&self, t: f64, eps: f64) -> f64 {
        let mut du = sech_sq(t);
        if self.order >= 1 {
            du += eps * Self::u1_prime(t);
        }
        if self.order >= 2 {
            du += eps * eps * Self::u2_prime(t);
        }
        du
    }

    /// `(u')^2 - (1 - u^2)(1 - (1 - eps) u^2)` for the truncated expansion.
    pub fn equation_residual(&self, t: f64, eps: f64) -> f64 {
        let u = self.eval(t, eps);
        let du = self.derivative(t, eps);
        let u2 = u * u;
        du * du - (1.0 - u2) * (1.0 - (1.0 - eps) * u2)
    }
}

pub(crate) fn sech_sq(t: f64) -> f64 {
    let c = t.cosh();
    1.0 / (c * c)
}

/// Outer expansion of `sn(t | 1 - eps)` through `eps^order`.
pub fn outer_eval(t: f64, spec: &ModulusSpec, order: u32) -> Result<f64> {
    Ok(OuterExpansion::new(order)?.eval(t, spec.eps()))
}

/// Trust region `eps e^{2|t|} << 1`, i.e. `(ln(eps)/2, -ln(eps)/2)`.
pub fn validity_interval(spec: &ModulusSpec) -> (f64, f64) {
    let half = 0.5 * spec.log_eps();
    (half, -half)
}

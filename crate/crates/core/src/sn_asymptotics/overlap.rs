//! Common part of the outer and inner expansions, i.e. the outer expansion
//! re-expanded in `tau` for `tau << -1`.

use crate::modulus::ModulusSpec;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapExpansion {
    log_eps: f64,
}

impl OverlapExpansion {
    pub fn new(spec: &ModulusSpec) -> Self {
        Self {
            log_eps: spec.log_eps(),
        }
    }

    /// `-e^{2tau}/128 - 2 e^{-2tau} + 1/4`
    pub fn first(&self, tau: f64) -> f64 {
        -(2.0 * tau).exp() / 128.0 - 2.0 * (-2.0 * tau).exp() + 0.25
    }

    /// `tau e^{2tau}/256 - ln(eps) e^{2tau}/512 - 5 e^{2tau}/512 - tau e^{-2tau}
    ///  + ln(eps) e^{-2tau}/2 - e^{-2tau}/2 + 2 e^{-4tau} + 11/64`
    pub fn second(&self, tau: f64) -> f64 {
        let ep = (2.0 * tau).exp();
        let em = (-2.0 * tau).exp();
        let l = self.log_eps;
        tau * ep / 256.0 - l * ep / 512.0 - 5.0 * ep / 512.0 - tau * em + l * em / 2.0 - em / 2.0
            + 2.0 * em * em
            + 11.0 / 64.0
    }

    pub fn eval(&self, tau: f64, eps: f64) -> f64 {
        1.0 + eps * self.first(tau) + eps * eps * self.second(tau)
    }
}

pub fn overlap_eval(tau: f64, spec: &ModulusSpec) -> f64 {
    OverlapExpansion::new(spec).eval(tau, spec.eps())
}

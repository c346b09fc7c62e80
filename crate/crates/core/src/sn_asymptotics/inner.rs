//! Expansion about the turning point `u = 1`, in the stretched coordinate
//! `tau = t + ln(eps)/2`: `u = 1 + eps v1(tau) + eps^2 v2(tau)`.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::modulus::ModulusSpec;

/// A point in both coordinates, `tau = t + ln(eps)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauCoord {
    pub t: f64,
    pub tau: f64,
}

impl TauCoord {
    pub fn from_t(t: f64, spec: &ModulusSpec) -> Self {
        Self {
            t,
            tau: t + 0.5 * spec.log_eps(),
        }
    }

    pub fn from_tau(tau: f64, spec: &ModulusSpec) -> Self {
        Self {
            t: tau - 0.5 * spec.log_eps(),
            tau,
        }
    }
}

/// Stationary point of `v1` with `c1 = -1/8`: `v1(2 ln 2) = v1'(2 ln 2) = 0`.
pub const FIRST_ORDER_TURNING_TAU: f64 = 2.0 * LN_2;

/// Sign of the first correction.
///
/// `Adopted` is `u = 1 + eps v1`, which agrees with the overlap expansion and
/// the composite formula. `Printed` is `u = 1 - eps v1`, kept so its error
/// can be measured next to the adopted one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerSign {
    Adopted,
    Printed,
}

/// Inner terms with the matched constants `c1 = -1/8`,
/// `c2 = -(ln eps + 5)/512`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerExpansion {
    pub c1: f64,
    pub c2: f64,
}

impl InnerExpansion {
    pub fn matched(spec: &ModulusSpec) -> Self {
        Self {
            c1: -1.0 / 8.0,
            c2: -(spec.log_eps() + 5.0) / 512.0,
        }
    }

    /// `v1 = (e^{2tau}/16) c1 + e^{-2tau}/(4 c1) + 1/4`
    pub fn v1(&self, tau: f64) -> f64 {
        let e2 = (2.0 * tau).exp();
        e2 / 16.0 * self.c1 + 1.0 / (4.0 * self.c1 * e2) + 0.25
    }

    pub fn v1_prime(&self, tau: f64) -> f64 {
        let e2 = (2.0 * tau).exp();
        e2 / 8.0 * self.c1 - 1.0 / (2.0 * self.c1 * e2)
    }

    /// `v2 = e^{2tau} c2 - 256 e^{-2tau} c2 + e^{4tau}/32768 + tau e^{2tau}/256
    ///       - tau e^{-2tau} - 3 e^{-2tau} + 2 e^{-4tau} + 11/64`
    pub fn v2(&self, tau: f64) -> f64 {
        let ep = (2.0 * tau).exp();
        let em = (-2.0 * tau).exp();
        ep * self.c2 - 256.0 * em * self.c2 + ep * ep / 32768.0 + tau * ep / 256.0
            - tau * em
            - 3.0 * em
            + 2.0 * em * em
            + 11.0 / 64.0
    }

    pub fn v2_prime(&self, tau: f64) -> f64 {
        let ep = (2.0 * tau).exp();
        let em = (-2.0 * tau).exp();
        2.0 * ep * self.c2 + 512.0 * em * self.c2 + ep * ep / 8192.0 + ep / 256.0 + tau * ep / 128.0
            - em
            + 2.0 * tau * em
            + 6.0 * em
            - 8.0 * em * em
    }

    pub fn eval(&self, tau: f64, eps: f64, order: u32, sign: InnerSign) -> f64 {
        let s = match sign {
            InnerSign::Adopted => 1.0,
            InnerSign::Printed => -1.0,
        };
        let mut u = 1.0 + s * eps * self.v1(tau);
        if order >= 2 {
            u += eps * eps * self.v2(tau);
        }
        u
    }
}

/// Residual of one side against the other, scaled by the larger side so
/// that cancellation between terms of size `e^{4|tau|}` is measured in ulps.
fn scaled(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs) / lhs.abs().max(rhs.abs()).max(1.0)
}

impl InnerExpansion {
    /// `(v1')^2 - (4 v1^2 + 2 v1)`: the first-order relation in the form it
    /// was printed. Not satisfied by `v1`; see [`Self::first_order_residual`].
    pub fn printed_first_order_residual(&self, tau: f64) -> f64 {
        let v = self.v1(tau);
        let dv = self.v1_prime(tau);
        scaled(dv * dv, 4.0 * v * v + 2.0 * v)
    }

    /// `(v1')^2 - (4 v1^2 - 2 v1)`, the relation that `u = 1 + eps v1`
    /// actually imposes at order `eps^2`.
    pub fn first_order_residual(&self, tau: f64) -> f64 {
        let v = self.v1(tau);
        let dv = self.v1_prime(tau);
        scaled(dv * dv, 4.0 * v * v - 2.0 * v)
    }

    /// `2 v1' v2' - (8 v1 v2 - 2 v2 + 4 v1^3 + 5 v1)`, as printed.
    pub fn printed_second_order_residual(&self, tau: f64) -> f64 {
        let (v1, d1, v2, d2) = (
            self.v1(tau),
            self.v1_prime(tau),
            self.v2(tau),
            self.v2_prime(tau),
        );
        scaled(
            2.0 * d1 * d2,
            8.0 * v1 * v2 - 2.0 * v2 + 4.0 * v1 * v1 * v1 + 5.0 * v1,
        )
    }

    /// `2 v1' v2' - (8 v1 v2 - 2 v2 + 4 v1^3 - 5 v1^2)`, the order `eps^3`
    /// balance of the defining equation.
    pub fn second_order_residual(&self, tau: f64) -> f64 {
        let (v1, d1, v2, d2) = (
            self.v1(tau),
            self.v1_prime(tau),
            self.v2(tau),
            self.v2_prime(tau),
        );
        scaled(
            2.0 * d1 * d2,
            8.0 * v1 * v2 - 2.0 * v2 + 4.0 * v1 * v1 * v1 - 5.0 * v1 * v1,
        )
    }
}

fn check_order(order: u32) -> Result<()> {
    if !(1..=2).contains(&order) {
        return Err(Error::InvalidOrder {
            order,
            expected: "1..=2",
        });
    }
    Ok(())
}

/// Inner expansion at `tau` with the adopted sign.
pub fn inner_eval(tau: f64, spec: &ModulusSpec, order: u32) -> Result<f64> {
    check_order(order)?;
    Ok(InnerExpansion::matched(spec).eval(tau, spec.eps(), order, InnerSign::Adopted))
}

/// Inner expansion with the first correction entering as `1 - eps v1`.
pub fn inner_eval_printed_sign(tau: f64, spec: &ModulusSpec, order: u32) -> Result<f64> {
    check_order(order)?;
    Ok(InnerExpansion::matched(spec).eval(tau, spec.eps(), order, InnerSign::Printed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(eps: f64) -> ModulusSpec {
        ModulusSpec::new(eps).unwrap()
    }

    #[test]
    fn tau_round_trip() {
        let s = spec(0.01);
        for t in [-3.0, 0.0, 1.5, 7.25] {
            let c = TauCoord::from_t(t, &s);
            let back = TauCoord::from_tau(c.tau, &s);
            assert!((back.t - t).abs() <= f64::EPSILON * t.abs().max(2.3));
        }
    }

    #[test]
    fn v1_closed_form() {
        let inner = InnerExpansion::matched(&spec(0.01));
        for tau in [-2.0f64, 0.0, 0.5, 3.0] {
            let direct = -(2.0 * tau).exp() / 128.0 - 2.0 * (-2.0 * tau).exp() + 0.25;
            assert!((inner.v1(tau) - direct).abs() < 1e-13 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn turning_point_of_v1() {
        let inner = InnerExpansion::matched(&spec(0.01));
        assert!(inner.v1(FIRST_ORDER_TURNING_TAU).abs() < 1e-16);
        assert!(inner.v1_prime(FIRST_ORDER_TURNING_TAU).abs() < 1e-16);
        assert!((inner_eval(FIRST_ORDER_TURNING_TAU, &spec(0.3), 1).unwrap() - 1.0).abs() < 1e-16);
    }

    #[test]
    fn tau_zero_value() {
        let v = inner_eval(0.0, &spec(0.01), 1).unwrap();
        assert!((v - 0.982_421_875).abs() < 1e-15);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let inner = InnerExpansion::matched(&spec(0.01));
        let h = 1e-6;
        for tau in [-1.5, 0.0, 0.8, 2.5] {
            let fd1 = (inner.v1(tau + h) - inner.v1(tau - h)) / (2.0 * h);
            let fd2 = (inner.v2(tau + h) - inner.v2(tau - h)) / (2.0 * h);
            assert!((inner.v1_prime(tau) - fd1).abs() < 1e-6 * fd1.abs().max(1.0));
            assert!((inner.v2_prime(tau) - fd2).abs() < 1e-6 * fd2.abs().max(1.0));
        }
    }

    #[test]
    fn consistent_relations_hold() {
        for eps in [0.1, 0.01, 1e-4] {
            let inner = InnerExpansion::matched(&spec(eps));
            for i in 0..=60 {
                let tau = -3.0 + 0.1 * i as f64;
                assert!(inner.first_order_residual(tau).abs() < 1e-13, "tau={tau}");
                assert!(inner.second_order_residual(tau).abs() < 1e-12, "tau={tau}");
            }
        }
    }

    #[test]
    fn printed_relations_do_not_hold() {
        let inner = InnerExpansion::matched(&spec(0.01));
        // (v1')^2 - 4v1^2 - 2v1 = e^{2tau}/32 + 8 e^{-2tau} - 1, i.e. 7.03125 at tau = 0.
        let lhs = inner.v1_prime(0.0).powi(2);
        let rhs = 4.0 * inner.v1(0.0).powi(2) + 2.0 * inner.v1(0.0);
        assert!((lhs - rhs - 7.031_25).abs() < 1e-13);
        assert!(inner.printed_second_order_residual(0.0).abs() > 0.1);
    }

    #[test]
    fn growth_envelopes() {
        let inner = InnerExpansion::matched(&spec(0.01));
        for tau in [4.0f64, 8.0] {
            assert!(inner.v1(tau).abs() * (-2.0 * tau).exp() < 0.01);
            assert!(inner.v1(-tau).abs() * (-2.0 * tau).exp() < 3.0);
            assert!(inner.v2(tau).abs() * (-4.0 * tau).exp() < 0.01);
            assert!(inner.v2(-tau).abs() * (-4.0 * tau).exp() < 3.0);
        }
    }

    #[test]
    fn order_checked() {
        assert!(inner_eval(0.0, &spec(0.01), 0).is_err());
        assert!(inner_eval(0.0, &spec(0.01), 3).is_err());
    }
}

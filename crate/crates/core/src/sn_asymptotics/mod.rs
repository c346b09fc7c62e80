//! Approximations of `sn(t | 1 - eps)` for small `eps`.
//!
//! * [`handbook_sn`]: the classical two-term formula, not uniform in `t`.
//! * [`outer_eval`]: expansion about the separatrix, trusted on
//!   [`validity_interval`].
//! * [`inner_eval`]: expansion about the turning point in `tau = t + ln(eps)/2`.
//! * [`overlap_eval`]: their common part.
//! * [`composite_first_half`] / [`composite_second_half`]: outer + inner minus
//!   common part, each covering one turning point.
//! * [`full_period_eval`]: the two composites glued at their crossing.

mod composite;
mod inner;
mod outer;
mod overlap;

use std::fmt;
use std::str::FromStr;

pub use composite::{
    composite_first_half, composite_second_half, full_period_eval, full_period_seams, seam_jumps,
    Seams,
};
pub use inner::{
    inner_eval, inner_eval_printed_sign, InnerExpansion, InnerSign, TauCoord,
    FIRST_ORDER_TURNING_TAU,
};
pub use outer::{outer_eval, validity_interval, OuterExpansion};
pub use overlap::{overlap_eval, OverlapExpansion};

use crate::error::{Error, Result};
use crate::modulus::ModulusSpec;
use crate::oracle::period;

/// `tanh t + eps (sinh t cosh t - t) sech^2 t / 4`.
pub fn handbook_sn(t: f64, spec: &ModulusSpec) -> f64 {
    t.tanh() + spec.eps() * OuterExpansion::u1(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ApproxKind {
    HandbookSn,
    Outer,
    Inner,
    CompositeFirstHalf,
    CompositeSecondHalf,
    FullPeriod,
}

impl ApproxKind {
    pub const ALL: [ApproxKind; 6] = [
        ApproxKind::HandbookSn,
        ApproxKind::Outer,
        ApproxKind::Inner,
        ApproxKind::CompositeFirstHalf,
        ApproxKind::CompositeSecondHalf,
        ApproxKind::FullPeriod,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            ApproxKind::HandbookSn => "handbook-sn",
            ApproxKind::Outer => "outer",
            ApproxKind::Inner => "inner",
            ApproxKind::CompositeFirstHalf => "composite",
            ApproxKind::CompositeSecondHalf => "composite-second",
            ApproxKind::FullPeriod => "full-period",
        }
    }

    /// Default truncation order for kinds that take one.
    pub fn default_order(&self) -> u32 {
        match self {
            ApproxKind::Outer | ApproxKind::Inner => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for ApproxKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ApproxKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let kind = match s {
            "handbook-sn" | "handbook_sn" => ApproxKind::HandbookSn,
            "outer" => ApproxKind::Outer,
            "inner" => ApproxKind::Inner,
            "composite" | "composite-first" | "composite_first_half" => {
                ApproxKind::CompositeFirstHalf
            }
            "composite-second" | "composite_second_half" => ApproxKind::CompositeSecondHalf,
            "full-period" | "full_period" => ApproxKind::FullPeriod,
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unknown approximation '{other}'"
                )))
            }
        };
        Ok(kind)
    }
}

/// Evaluates `kind` at time `t`. The inner expansion is evaluated at
/// `tau = t + ln(eps)/2`.
pub fn approx_eval(kind: ApproxKind, t: f64, spec: &ModulusSpec, order: u32) -> Result<f64> {
    match kind {
        ApproxKind::HandbookSn => Ok(handbook_sn(t, spec)),
        ApproxKind::Outer => outer_eval(t, spec, order),
        ApproxKind::Inner => inner_eval(TauCoord::from_t(t, spec).tau, spec, order),
        ApproxKind::CompositeFirstHalf => Ok(composite_first_half(t, spec)),
        ApproxKind::CompositeSecondHalf => composite_second_half(t, spec),
        ApproxKind::FullPeriod => full_period_eval(t, spec),
    }
}

/// Interval of `t` on which `kind` is expected to be accurate.
///
/// The composite covers the union of the outer region and the inner region
/// `|tau| < -ln(eps)/2`, i.e. `(ln(eps)/2, -ln(eps))`.
pub fn trust_window(kind: ApproxKind, spec: &ModulusSpec) -> Result<(f64, f64)> {
    let half_log = 0.5 * spec.log_eps();
    Ok(match kind {
        ApproxKind::HandbookSn | ApproxKind::Outer => validity_interval(spec),
        ApproxKind::Inner => (0.0, -2.0 * half_log),
        ApproxKind::CompositeFirstHalf => (half_log, -2.0 * half_log),
        ApproxKind::CompositeSecondHalf => {
            let half = period(spec)?.half;
            (half_log + half, -2.0 * half_log + half)
        }
        ApproxKind::FullPeriod => (f64::NEG_INFINITY, f64::INFINITY),
    })
}

/// The window `(ln sqrt(eps), -3 ln sqrt(eps))` over which the first-half
/// composite has been claimed uniform. It reaches past `2K`, where the
/// `eps^2 e^{2t}` term is no longer small.
pub fn composite_claimed_window(spec: &ModulusSpec) -> (f64, f64) {
    let half_log = 0.5 * spec.log_eps();
    (half_log, -3.0 * half_log)
}

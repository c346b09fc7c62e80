//! Composite (outer + inner - common part) approximations and the piecewise
//! full-period evaluator built from them.

use crate::error::Result;
use crate::modulus::ModulusSpec;
use crate::oracle::period;

use super::outer::sech_sq;

/// `tanh t + eps a1(t)/cosh^2 t + eps/4 - eps^2 e^{2t}/128`
pub fn composite_first_half(t: f64, spec: &ModulusSpec) -> f64 {
    let eps = spec.eps();
    let th = t.tanh();
    th + eps * (0.25 * th - 0.25 * t * sech_sq(t)) + 0.25 * eps
        - eps * eps * (2.0 * t).exp() / 128.0
}

/// Image of the first-half composite under `u(t + T/2) = -u(t)`, with the
/// exact period `T = 4 K(1 - eps)`.
pub fn composite_second_half(t: f64, spec: &ModulusSpec) -> Result<f64> {
    let half = period(spec)?.half;
    Ok(second_half_with(t, half, spec))
}

fn second_half_with(t: f64, half_period: f64, spec: &ModulusSpec) -> f64 {
    -composite_first_half(t - half_period, spec)
}

/// Where the full-period evaluator switches between the two composites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Seams {
    /// Switch from the first-half to the second-half composite, in `(K, 2K)`.
    pub upper: f64,
    /// Switch back, `upper + T/2`.
    pub lower: f64,
    pub period: f64,
}

/// Locates the crossing of the two composites between the turning point `K`
/// and the zero at `2K` by bisection; both approximations are inside their
/// trust regions there and the crossing removes the jump entirely. Falls back
/// to `3K/2` when the two curves do not cross.
pub fn full_period_seams(spec: &ModulusSpec) -> Result<Seams> {
    let p = period(spec)?;
    let k = p.quarter;
    let gap = |t: f64| composite_first_half(t, spec) - second_half_with(t, p.half, spec);

    let (mut lo, mut hi) = (k, 2.0 * k);
    let (mut g_lo, g_hi) = (gap(lo), gap(hi));
    let upper = if g_lo.signum() == g_hi.signum() {
        1.5 * k
    } else {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let g = gap(mid);
            if g.signum() == g_lo.signum() {
                lo = mid;
                g_lo = g;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    Ok(Seams {
        upper,
        lower: upper + p.half,
        period: p.full,
    })
}

/// Piecewise uniform approximation over every period: `t` is reduced into
/// `[upper - T/2, upper + T/2)`, the first-half composite is used below
/// `upper` and the second-half composite above.
pub fn full_period_eval(t: f64, spec: &ModulusSpec) -> Result<f64> {
    let seams = full_period_seams(spec)?;
    Ok(full_period_with(t, &seams, spec))
}

pub(crate) fn full_period_with(t: f64, seams: &Seams, spec: &ModulusSpec) -> f64 {
    let half = 0.5 * seams.period;
    let start = seams.upper - half;
    let r = start + (t - start).rem_euclid(seams.period);
    if r < seams.upper {
        composite_first_half(r, spec)
    } else {
        second_half_with(r, half, spec)
    }
}

/// `|left - right|` of the full-period evaluator at each seam.
pub fn seam_jumps(spec: &ModulusSpec) -> Result<[f64; 2]> {
    let seams = full_period_seams(spec)?;
    let half = 0.5 * seams.period;
    let at = |t: f64| (composite_first_half(t, spec) - second_half_with(t, half, spec)).abs();
    // At `lower` the second-half composite meets the next period's first-half
    // composite, i.e. second(lower) vs first(lower - T).
    let lower = (second_half_with(seams.lower, half, spec)
        - composite_first_half(seams.lower - seams.period, spec))
    .abs();
    Ok([at(seams.upper), lower])
}

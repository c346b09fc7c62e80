//! Independent route to `sn`: adaptive Dormand-Prince 5(4) on the
//! differentiated form `u'' = -(2 - eps) u + 2 (1 - eps) u^3`, `u(0) = 0`,
//! `u'(0) = 1`. The first-order form has a square-root singularity at the
//! turning points, the second-order form does not.

use crate::error::{Error, Result};
use crate::modulus::ModulusSpec;

use super::period;

const TOL: f64 = 1e-15;
const SAFETY: f64 = 0.9;

type State = [f64; 2];

// Dormand-Prince tableau. The system is autonomous, so the nodes are not needed;
// the last row doubles as the 5th order weights.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// Difference between the 5th and embedded 4th order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

struct System {
    linear: f64,
    cubic: f64,
}

impl System {
    fn new(eps: f64) -> Self {
        Self {
            linear: -(2.0 - eps),
            cubic: 2.0 * (1.0 - eps),
        }
    }

    #[inline]
    fn rhs(&self, y: &State) -> State {
        let u = y[0];
        [y[1], self.linear * u + self.cubic * u * u * u]
    }
}

/// Integrates from 0 towards each target in `targets` (which must share a
/// sign and be ordered by increasing magnitude), landing exactly on each.
fn sweep(sys: &System, targets: &[(usize, f64)], out: &mut [f64]) -> Result<()> {
    let mut t = 0.0f64;
    let mut y: State = [0.0, 1.0];
    let mut h: f64 = 1e-3;
    let mut k = [[0.0f64; 2]; 7];
    k[0] = sys.rhs(&y);

    for &(idx, target) in targets {
        let dir = target.signum();
        h = h.abs() * dir;
        while (target - t) * dir > 0.0 {
            let last = (t + h - target) * dir >= 0.0;
            let step = if last { target - t } else { h };
            if step.abs() < 1e-15 * t.abs().max(1.0) && !last {
                return Err(Error::IntegrationFailure { reached_t: t });
            }

            for s in 1..7 {
                let mut ys = y;
                for (j, kj) in k.iter().enumerate().take(s) {
                    let a = A[s][j];
                    if a != 0.0 {
                        ys[0] += step * a * kj[0];
                        ys[1] += step * a * kj[1];
                    }
                }
                k[s] = sys.rhs(&ys);
            }
            let mut y_new = y;
            let mut err = [0.0f64; 2];
            for (s, ks) in k.iter().enumerate() {
                if s < 6 {
                    y_new[0] += step * A[6][s] * ks[0];
                    y_new[1] += step * A[6][s] * ks[1];
                }
                err[0] += step * E[s] * ks[0];
                err[1] += step * E[s] * ks[1];
            }

            let norm = (0..2)
                .map(|i| err[i].abs() / (TOL + TOL * y[i].abs().max(y_new[i].abs())))
                .fold(0.0f64, f64::max);

            if norm <= 1.0 {
                t = if last { target } else { t + step };
                y = y_new;
                // First-same-as-last: stage 7 was evaluated at y_new.
                k[0] = k[6];
            }
            let factor = if norm == 0.0 {
                5.0
            } else {
                (SAFETY * norm.powf(-0.2)).clamp(0.2, 5.0)
            };
            if !(norm <= 1.0 && last) {
                h = step * factor;
            }
            if !h.is_finite() || h.abs() < 1e-15 * t.abs().max(1.0) {
                return Err(Error::IntegrationFailure { reached_t: t });
            }
        }
        out[idx] = y[0];
    }
    Ok(())
}

/// `u(t)` at every requested point, integrating once per direction.
pub fn ode_trajectory(ts: &[f64], spec: &ModulusSpec) -> Result<Vec<f64>> {
    if !spec.is_degenerate() {
        let limit = 2.0 * period(spec)?.full;
        if let Some(&bad) = ts.iter().find(|t| t.is_nan() || t.abs() > limit) {
            return Err(Error::HorizonExceeded {
                t: bad.abs(),
                limit,
            });
        }
    }
    let sys = System::new(spec.eps());
    let mut out = vec![0.0; ts.len()];

    let mut forward: Vec<(usize, f64)> = Vec::new();
    let mut backward: Vec<(usize, f64)> = Vec::new();
    for (i, &t) in ts.iter().enumerate() {
        if t > 0.0 {
            forward.push((i, t));
        } else if t < 0.0 {
            backward.push((i, t));
        }
    }
    forward.sort_by(|a, b| a.1.total_cmp(&b.1));
    backward.sort_by(|a, b| b.1.total_cmp(&a.1));
    sweep(&sys, &forward, &mut out)?;
    sweep(&sys, &backward, &mut out)?;
    Ok(out)
}

pub fn ode_cross_check(t: f64, spec: &ModulusSpec) -> Result<f64> {
    Ok(ode_trajectory(&[t], spec)?[0])
}

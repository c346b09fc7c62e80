//! High-accuracy reference evaluation: the complete integral `K`, the period,
//! `sn/cn/dn` by descending Landen, an independent Runge-Kutta route for `sn`,
//! and quadrature of the weakly singular integrals behind the `K` series.

mod double_double;
mod jacobi;
mod ode;
mod quadrature;

pub use double_double::DoubleDouble;
pub use jacobi::{jacobi_sn, JacobiTriple};
pub use ode::{ode_cross_check, ode_trajectory};
pub use quadrature::{gauss_kronrod_adaptive, k_by_quadrature, quad_weak_singularity};

use crate::error::{Error, Result};
use crate::modulus::ModulusSpec;

/// Quarter, half and full period of `sn(.|m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodInfo {
    pub quarter: f64,
    pub half: f64,
    pub full: f64,
}

/// `K(m) = pi / (2 AGM(1, sqrt(1 - m)))`, carried out in double-double.
pub fn complete_k_extended(spec: &ModulusSpec) -> Result<DoubleDouble> {
    if spec.is_degenerate() {
        return Err(Error::DegenerateModulus);
    }
    let mut a = DoubleDouble::from_f64(1.0);
    let mut b = DoubleDouble::from_f64(spec.eps()).sqrt();
    for _ in 0..64 {
        if (a - b).abs().hi <= 1e-33 * a.hi {
            break;
        }
        let next_a = (a + b).half();
        b = (a * b).sqrt();
        a = next_a;
    }
    Ok(double_double::PI / (a + b))
}

/// Complete elliptic integral of the first kind at `m = 1 - eps`.
pub fn complete_k(spec: &ModulusSpec) -> Result<f64> {
    complete_k_extended(spec).map(DoubleDouble::to_f64)
}

/// `approx - K(m)`, with the subtraction done against the double-double
/// value so that residuals below one ulp of `K` stay visible.
pub fn k_error(approx: f64, spec: &ModulusSpec) -> Result<f64> {
    let k = complete_k_extended(spec)?;
    Ok((DoubleDouble::from_f64(approx) - k).to_f64())
}

pub fn period(spec: &ModulusSpec) -> Result<PeriodInfo> {
    let quarter = complete_k(spec)?;
    Ok(PeriodInfo {
        quarter,
        half: 2.0 * quarter,
        full: 4.0 * quarter,
    })
}

//! Asymptotic approximations of the Jacobi function `sn(t | 1 - eps)` and of
//! the complete elliptic integral `K(1 - eps)` as `eps -> 0`, together with
//! an AGM/Landen oracle to measure them against.

// Reference values are kept to the digits they were computed with.
#![allow(clippy::excessive_precision)]

pub mod error;
pub mod k_asymptotics;
pub mod modulus;
pub mod oracle;
pub mod scan;
pub mod sn_asymptotics;

pub use error::{Error, Result};
pub use k_asymptotics::{
    i0_closed_form, k_asymptotic, k_coefficient_table, k_handbook, k_mu_series, KSeriesCoefficients,
};
pub use modulus::ModulusSpec;
pub use oracle::{complete_k, jacobi_sn, period, JacobiTriple, PeriodInfo};
pub use sn_asymptotics::{
    approx_eval, composite_first_half, composite_second_half, full_period_eval, handbook_sn,
    inner_eval, outer_eval, ApproxKind,
};

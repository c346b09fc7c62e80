//! Approximations of the complete integral `K(1 - eps)` as `eps -> 0`: the
//! logarithmic asymptotic series, the binomial `mu`-series it comes from, and
//! the Abramowitz-Stegun 17.3.34 polynomial for comparison.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::modulus::ModulusSpec;
use crate::oracle::quad_weak_singularity;

/// `K ~ sum_k (const_part[k] - log_coeff[k] * ln eps) * eps^k`, k = 0..=4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KSeriesCoefficients {
    pub const_part: [f64; 5],
    pub log_coeff: [f64; 5],
}

/// The decimal constants of the series as printed in numeric form.
pub const K_SERIES_NUMERIC: KSeriesCoefficients = KSeriesCoefficients {
    const_part: [
        1.386_294_361_119_891,
        0.096_573_590_279_972_64,
        0.030_885_144_532_484_59,
        0.014_937_600_369_780_98,
        0.008_766_312_197_176_06,
    ],
    log_coeff: [
        0.5,
        0.125,
        0.070_312_5,
        0.048_828_125,
        0.037_384_033_203_125,
    ],
};

impl KSeriesCoefficients {
    /// Exact forms: rationals and rational multiples of `ln 2`.
    pub fn exact() -> Self {
        Self {
            const_part: [
                2.0 * LN_2,
                (-1.0 + 2.0 * LN_2) / 4.0,
                (-21.0 + 36.0 * LN_2) / 128.0,
                (-185.0 + 300.0 * LN_2) / 1536.0,
                (-18655.0 + 29400.0 * LN_2) / 196_608.0,
            ],
            log_coeff: [
                1.0 / 2.0,
                1.0 / 8.0,
                9.0 / 128.0,
                25.0 / 512.0,
                1225.0 / 32768.0,
            ],
        }
    }

    /// Partial sum through `eps^order`.
    pub fn eval(&self, eps: f64, order: usize) -> f64 {
        let log_eps = eps.ln();
        // Horner over the higher terms, then add the leading pair last so its
        // rounding is the only one at the scale of K.
        let mut tail = 0.0;
        for k in (1..=order).rev() {
            tail = tail * eps + (self.const_part[k] - self.log_coeff[k] * log_eps);
        }
        self.const_part[0] + (tail * eps - self.log_coeff[0] * log_eps)
    }
}

/// Abramowitz-Stegun 17.3.34: `K = sum a_k eps^k + (sum b_k eps^k) ln(1/eps)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HandbookKCoefficients {
    pub a: [f64; 5],
    pub b: [f64; 5],
    pub err_bound: f64,
}

impl HandbookKCoefficients {
    /// The handbook table. `a[0]` is `1.38629436112`.
    pub const STANDARD: Self = Self {
        a: [
            1.386_294_361_12,
            0.096_663_442_59,
            0.035_900_923_83,
            0.037_425_637_13,
            0.014_511_962_12,
        ],
        b: [
            0.5,
            0.124_985_935_97,
            0.068_802_485_76,
            0.033_283_553_46,
            0.004_417_870_12,
        ],
        err_bound: 2e-8,
    };

    /// Same table with the leading constant transcribed as `1.38662943`, a
    /// digit slip that shifts every value by about `3.35e-4`.
    pub const TRANSCRIBED: Self = Self {
        a: [
            1.386_629_43,
            0.096_663_442_59,
            0.035_900_923_83,
            0.037_425_637_13,
            0.014_511_962_12,
        ],
        ..Self::STANDARD
    };

    pub fn eval(&self, eps: f64) -> f64 {
        let poly = |c: &[f64; 5]| c.iter().rev().fold(0.0, |acc, &x| acc * eps + x);
        poly(&self.a) + poly(&self.b) * (1.0 / eps).ln()
    }
}

/// Binomial weights of `(1 - x)^(-1/2)`: `(2k - 1)!! / (2k)!!` for k = 1..=4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinomialWeights(pub [f64; 4]);

impl Default for BinomialWeights {
    fn default() -> Self {
        Self([1.0 / 2.0, 3.0 / 8.0, 5.0 / 16.0, 35.0 / 128.0])
    }
}

impl BinomialWeights {
    /// Weight for `mu^k`, `k` in `1..=4`.
    pub fn get(&self, k: usize) -> f64 {
        self.0[k - 1]
    }
}

pub fn k_coefficient_table() -> KSeriesCoefficients {
    KSeriesCoefficients::exact()
}

/// Asymptotic series for `K(1 - eps)` truncated after `eps^order`.
pub fn k_asymptotic(spec: &ModulusSpec, order: u32) -> Result<f64> {
    k_asymptotic_with(&KSeriesCoefficients::exact(), spec, order)
}

pub fn k_asymptotic_with(
    coeffs: &KSeriesCoefficients,
    spec: &ModulusSpec,
    order: u32,
) -> Result<f64> {
    if order > 4 {
        return Err(Error::InvalidOrder {
            order,
            expected: "0..=4",
        });
    }
    if spec.is_degenerate() {
        return Err(Error::DegenerateModulus);
    }
    if spec.eps() >= 1.0 {
        return Err(Error::SeriesDomain(spec.eps()));
    }
    Ok(coeffs.eval(spec.eps(), order as usize))
}

pub fn k_handbook(spec: &ModulusSpec) -> Result<f64> {
    if spec.is_degenerate() {
        return Err(Error::DegenerateModulus);
    }
    Ok(HandbookKCoefficients::STANDARD.eval(spec.eps()))
}

/// Closed form of `I_0(mu)`:
/// `sqrt(4 - 2mu) log(mu) / (2mu - 4) - log(-mu + 2 sqrt(4 - 2mu) + 4) sqrt(4 - 2mu) / (2mu - 4)`,
/// evaluated as `[ln(4 - mu + 2 sqrt(4 - 2mu)) - ln mu] / sqrt(4 - 2mu)`.
pub fn i0_closed_form(mu: f64) -> Result<f64> {
    if !(1e-300..1.0).contains(&mu) {
        return Err(Error::InvalidMu(mu));
    }
    let r = (4.0 - 2.0 * mu).sqrt();
    Ok(((4.0 - mu + 2.0 * r).ln() - mu.ln()) / r)
}

/// `I_0 + sum_{k=1..4} mu^k w_k J_k(mu)` with `J_k` by quadrature.
pub fn k_mu_series(spec: &ModulusSpec) -> Result<f64> {
    let mu = spec.mu();
    if !(mu > 0.0 && mu < 0.5) {
        return Err(Error::InvalidMu(mu));
    }
    let weights = BinomialWeights::default();
    let mut tail = 0.0;
    for k in (1..=4usize).rev() {
        tail = tail * mu + weights.get(k) * quad_weak_singularity(k as u32, spec)?;
    }
    Ok(i0_closed_form(mu)? + tail * mu)
}

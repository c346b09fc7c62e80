use std::io::Write;

use crate::error::Result;
use crate::k_asymptotics::{k_asymptotic, k_handbook, k_mu_series, HandbookKCoefficients};
use crate::modulus::ModulusSpec;
use crate::oracle::{complete_k, k_error};

use super::fmt_f64;

pub const DEFAULT_KCOMPARE_EPS: [f64; 8] = [0.9, 0.5, 0.1, 0.03, 0.01, 0.001, 1e-4, 1e-8];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KCompareRow {
    pub eps: f64,
    pub k_oracle: f64,
    pub k_handbook: f64,
    pub k_asym4: f64,
    /// `None` where `mu >= 1/2`, outside the binomial series' range.
    pub k_mu_series: Option<f64>,
    pub res_handbook: f64,
    pub res_asym4: f64,
    pub res_mu_series: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KCompareReport {
    pub rows: Vec<KCompareRow>,
}

pub const KCOMPARE_HEADER: &str =
    "eps,K_oracle,K_handbook,K_asym4,K_mu_series,res_handbook,res_asym4,res_mu_series";

/// Every `K` formula against the oracle at each `eps` in `(0, 1)`.
/// Residuals are signed, `formula - K`.
pub fn kcompare(eps_grid: &[f64]) -> Result<KCompareReport> {
    let mut rows = Vec::with_capacity(eps_grid.len());
    for &eps in eps_grid {
        let spec = ModulusSpec::new(eps)?;
        let k_oracle = complete_k(&spec)?;
        let k_hb = k_handbook(&spec)?;
        let k_asym4 = k_asymptotic(&spec, 4)?;
        let k_mu = if spec.mu() < 0.5 {
            Some(k_mu_series(&spec)?)
        } else {
            None
        };
        rows.push(KCompareRow {
            eps,
            k_oracle,
            k_handbook: k_hb,
            k_asym4,
            k_mu_series: k_mu,
            res_handbook: k_error(k_hb, &spec)?,
            res_asym4: k_error(k_asym4, &spec)?,
            res_mu_series: k_mu.map(|v| k_error(v, &spec)).transpose()?,
        });
    }
    Ok(KCompareReport { rows })
}

impl KCompareReport {
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
        writeln!(out, "{KCOMPARE_HEADER}")?;
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                fmt_f64(r.eps),
                fmt_f64(r.k_oracle),
                fmt_f64(r.k_handbook),
                fmt_f64(r.k_asym4),
                opt(r.k_mu_series),
                fmt_f64(r.res_handbook),
                fmt_f64(r.res_asym4),
                opt(r.res_mu_series),
            )?;
        }
        out.flush()
    }

    /// Number of rows where the handbook polynomial meets its stated bound.
    pub fn handbook_bound_count(&self) -> usize {
        let bound = HandbookKCoefficients::STANDARD.err_bound;
        self.rows
            .iter()
            .filter(|r| r.res_handbook.abs() < bound)
            .count()
    }

    pub fn summary(&self) -> String {
        let worst = self
            .rows
            .iter()
            .map(|r| r.res_handbook.abs())
            .fold(0.0, f64::max);
        format!(
            "handbook |e| < {}: {}/{} rows, max |e| = {}",
            fmt_f64(HandbookKCoefficients::STANDARD.err_bound),
            self.handbook_bound_count(),
            self.rows.len(),
            fmt_f64(worst)
        )
    }
}

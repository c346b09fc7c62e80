//! Error scans of the approximations against the oracle, written as CSV.

mod kcompare;
mod order;
mod selftest;

pub use kcompare::{kcompare, KCompareReport, KCompareRow, DEFAULT_KCOMPARE_EPS};
pub use order::{
    fit_order, run_order, OrderConfig, OrderFit, OrderTarget, WindowPolicy, DEFAULT_EPS_LADDER,
};
pub use selftest::{run_selftest, run_selftest_with, CheckOutcome, SelfTestReport};

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::modulus::ModulusSpec;
use crate::oracle::jacobi_sn;
use crate::sn_asymptotics::{
    approx_eval, inner_eval_printed_sign, trust_window, ApproxKind, TauCoord,
};

/// Floor on `|oracle|` in the relative error, so zeros of `sn` do not blow it up.
pub const REL_ERR_FLOOR: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub eps: f64,
    pub kind: ApproxKind,
    pub order: u32,
    pub t_min: f64,
    pub t_max: f64,
    pub samples: usize,
}

impl ScanConfig {
    pub fn validate(&self) -> Result<ModulusSpec> {
        if self.t_min >= self.t_max || !self.t_min.is_finite() || !self.t_max.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "need finite tmin < tmax, got [{}, {}]",
                self.t_min, self.t_max
            )));
        }
        if self.samples < 2 {
            return Err(Error::InvalidConfig(format!(
                "samples must be >= 2, got {}",
                self.samples
            )));
        }
        ModulusSpec::new(self.eps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub t: f64,
    pub oracle: f64,
    pub approx: f64,
    pub abs_err: f64,
    pub rel_err: f64,
}

impl ScanRow {
    pub fn new(t: f64, oracle: f64, approx: f64) -> Self {
        let abs_err = (oracle - approx).abs();
        Self {
            t,
            oracle,
            approx,
            abs_err,
            rel_err: abs_err / oracle.abs().max(REL_ERR_FLOOR),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub config: ScanConfig,
    pub rows: Vec<ScanRow>,
    pub max_abs_err: f64,
    pub argmax_t: f64,
    /// Whether the scanned window leaves the approximation's trust region.
    pub trust_exceeded: bool,
    /// For inner scans: the same maximum with the first correction's sign flipped.
    pub printed_sign_max_abs_err: Option<f64>,
}

/// `samples` points from `t_min` to `t_max`, both included.
pub fn uniform_grid(t_min: f64, t_max: f64, samples: usize) -> Vec<f64> {
    let step = (t_max - t_min) / (samples - 1) as f64;
    (0..samples)
        .map(|i| {
            if i + 1 == samples {
                t_max
            } else {
                t_min + i as f64 * step
            }
        })
        .collect()
}

pub fn run_scan(config: &ScanConfig) -> Result<ScanReport> {
    let spec = config.validate()?;
    let grid = uniform_grid(config.t_min, config.t_max, config.samples);
    let rows = grid
        .par_iter()
        .map(|&t| {
            let oracle = jacobi_sn(t, &spec)?.sn;
            let approx = approx_eval(config.kind, t, &spec, config.order)?;
            Ok(ScanRow::new(t, oracle, approx))
        })
        .collect::<Result<Vec<_>>>()?;

    let (max_abs_err, argmax_t) = rows
        .iter()
        .fold((f64::NEG_INFINITY, f64::NAN), |(m, at), r| {
            if r.abs_err > m {
                (r.abs_err, r.t)
            } else {
                (m, at)
            }
        });
    let (lo, hi) = trust_window(config.kind, &spec)?;
    let trust_exceeded = config.t_min < lo || config.t_max > hi;

    let printed_sign_max_abs_err = if config.kind == ApproxKind::Inner {
        let mut worst = 0.0f64;
        for r in &rows {
            let tau = TauCoord::from_t(r.t, &spec).tau;
            let v = inner_eval_printed_sign(tau, &spec, config.order)?;
            worst = worst.max((r.oracle - v).abs());
        }
        Some(worst)
    } else {
        None
    };

    Ok(ScanReport {
        config: config.clone(),
        rows,
        max_abs_err,
        argmax_t,
        trust_exceeded,
        printed_sign_max_abs_err,
    })
}

pub const SCAN_HEADER: &str = "t,oracle,approx,abs_err,rel_err";

/// Shortest round-trip representation of a binary64 value.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

pub fn write_scan_csv<W: Write>(rows: &[ScanRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{SCAN_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_f64(r.t),
            fmt_f64(r.oracle),
            fmt_f64(r.approx),
            fmt_f64(r.abs_err),
            fmt_f64(r.rel_err)
        )?;
    }
    out.flush()
}

impl ScanReport {
    pub fn summary(&self) -> String {
        let mut s = format!(
            "approx={} eps={} order={} samples={} max_abs_err={} argmax_t={} trust={}",
            self.config.kind,
            fmt_f64(self.config.eps),
            self.config.order,
            self.rows.len(),
            fmt_f64(self.max_abs_err),
            fmt_f64(self.argmax_t),
            if self.trust_exceeded {
                "exceeded"
            } else {
                "inside"
            },
        );
        if let Some(p) = self.printed_sign_max_abs_err {
            s.push_str(&format!(" printed_sign_max_abs_err={}", fmt_f64(p)));
        }
        s
    }
}

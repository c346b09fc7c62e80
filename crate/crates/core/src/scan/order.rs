//! Empirical convergence orders: the least-squares slope of
//! `ln(max error)` against `ln(eps)` over a ladder of `eps`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::k_asymptotics::{k_asymptotic, k_handbook, k_mu_series};
use crate::modulus::ModulusSpec;
use crate::oracle::{jacobi_sn, k_error, period};
use crate::sn_asymptotics::{
    approx_eval, trust_window, ApproxKind, TauCoord, FIRST_ORDER_TURNING_TAU,
};

use super::uniform_grid;

pub const DEFAULT_EPS_LADDER: [f64; 5] = [0.1, 0.03, 0.01, 0.003, 0.001];

#[derive(Debug, Clone, PartialEq)]
pub struct OrderFit {
    pub eps_list: Vec<f64>,
    pub max_errs: Vec<f64>,
    pub fitted_order: f64,
    pub r_squared: f64,
}

/// Least-squares fit of `ln err = p ln eps + c`.
pub fn fit_order(eps_list: &[f64], max_errs: &[f64]) -> Result<OrderFit> {
    if eps_list.len() != max_errs.len() || eps_list.len() < 2 {
        return Err(Error::InvalidConfig(
            "order fit needs matching ladders of length >= 2".into(),
        ));
    }
    if max_errs.iter().any(|&e| !(e > 0.0 && e.is_finite())) {
        return Err(Error::InvalidConfig(format!(
            "non-positive error in ladder: {max_errs:?}"
        )));
    }
    if max_errs.windows(2).all(|w| w[0] == w[1]) {
        return Err(Error::FlatErrorLadder);
    }
    let xs: Vec<f64> = eps_list.iter().map(|e| e.ln()).collect();
    let ys: Vec<f64> = max_errs.iter().map(|e| e.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0)
    };
    Ok(OrderFit {
        eps_list: eps_list.to_vec(),
        max_errs: max_errs.to_vec(),
        fitted_order: slope,
        r_squared,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowPolicy {
    /// A window that does not move with `eps`.
    Fixed,
    /// The approximation's trust region, which widens like `|ln eps|`.
    Scaled,
}

impl FromStr for WindowPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixed" => Ok(Self::Fixed),
            "scaled" => Ok(Self::Scaled),
            other => Err(Error::InvalidConfig(format!(
                "unknown window policy '{other}'"
            ))),
        }
    }
}

/// What an order ladder measures: an `sn` approximation on a `t` window, or
/// one of the `K` formulas at a single point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderTarget {
    Sn(ApproxKind),
    KAsymptotic,
    KHandbook,
    KMuSeries,
}

impl fmt::Display for OrderTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderTarget::Sn(kind) => write!(f, "{kind}"),
            OrderTarget::KAsymptotic => f.write_str("k-asym"),
            OrderTarget::KHandbook => f.write_str("k-handbook"),
            OrderTarget::KMuSeries => f.write_str("k-mu"),
        }
    }
}

impl FromStr for OrderTarget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "k-asym" => Ok(Self::KAsymptotic),
            "k-handbook" => Ok(Self::KHandbook),
            "k-mu" => Ok(Self::KMuSeries),
            other => other.parse().map(Self::Sn),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderConfig {
    pub target: OrderTarget,
    pub eps_list: Vec<f64>,
    pub window: WindowPolicy,
    pub order: u32,
    pub samples: usize,
}

impl OrderConfig {
    pub fn validate(&self) -> Result<Vec<ModulusSpec>> {
        if self.eps_list.len() < 3 {
            return Err(Error::InvalidConfig(
                "eps list needs at least 3 values".into(),
            ));
        }
        if !self.eps_list.windows(2).all(|w| w[0] > w[1]) {
            return Err(Error::InvalidConfig(
                "eps list must be strictly decreasing".into(),
            ));
        }
        if self.samples < 2 {
            return Err(Error::InvalidConfig("samples must be >= 2".into()));
        }
        self.eps_list.iter().map(|&e| ModulusSpec::new(e)).collect()
    }
}

/// The `t` window an order ladder scans for `kind` at `spec`.
pub fn order_window(
    kind: ApproxKind,
    policy: WindowPolicy,
    spec: &ModulusSpec,
) -> Result<(f64, f64)> {
    match (policy, kind) {
        (WindowPolicy::Fixed, ApproxKind::Inner) => {
            let c = TauCoord::from_tau(FIRST_ORDER_TURNING_TAU, spec).t;
            Ok((c - 1.0, c + 1.0))
        }
        (WindowPolicy::Fixed, ApproxKind::CompositeSecondHalf) => {
            let h = period(spec)?.half;
            Ok((h - 1.0, h + 1.0))
        }
        (WindowPolicy::Fixed, _) => Ok((-1.0, 1.0)),
        (WindowPolicy::Scaled, ApproxKind::FullPeriod) => Ok((0.0, period(spec)?.full)),
        (WindowPolicy::Scaled, _) => trust_window(kind, spec),
    }
}

/// Maximum of `|approx - sn|` over a uniform grid.
pub fn max_sn_error(
    kind: ApproxKind,
    spec: &ModulusSpec,
    order: u32,
    window: (f64, f64),
    samples: usize,
) -> Result<f64> {
    let grid = uniform_grid(window.0, window.1, samples);
    let errs = grid
        .par_iter()
        .map(|&t| Ok((approx_eval(kind, t, spec, order)? - jacobi_sn(t, spec)?.sn).abs()))
        .collect::<Result<Vec<f64>>>()?;
    Ok(errs.into_iter().fold(0.0, f64::max))
}

fn target_error(config: &OrderConfig, spec: &ModulusSpec) -> Result<f64> {
    match config.target {
        OrderTarget::Sn(kind) => {
            let window = order_window(kind, config.window, spec)?;
            max_sn_error(kind, spec, config.order, window, config.samples)
        }
        OrderTarget::KAsymptotic => Ok(k_error(k_asymptotic(spec, config.order)?, spec)?.abs()),
        OrderTarget::KHandbook => Ok(k_error(k_handbook(spec)?, spec)?.abs()),
        OrderTarget::KMuSeries => Ok(k_error(k_mu_series(spec)?, spec)?.abs()),
    }
}

pub fn run_order(config: &OrderConfig) -> Result<OrderFit> {
    let specs = config.validate()?;
    let errs = specs
        .iter()
        .map(|s| target_error(config, s))
        .collect::<Result<Vec<_>>>()?;
    fit_order(&config.eps_list, &errs)
}

impl OrderFit {
    pub fn render(&self, target: &OrderTarget) -> String {
        let mut s = String::from("eps,max_err\n");
        for (e, m) in self.eps_list.iter().zip(&self.max_errs) {
            s.push_str(&format!("{},{}\n", super::fmt_f64(*e), super::fmt_f64(*m)));
        }
        s.push_str(&format!(
            "target={} fitted_order={:.4} r_squared={:.6}\n",
            target, self.fitted_order, self.r_squared
        ));
        s
    }
}

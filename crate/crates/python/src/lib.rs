//! Python bindings: `import jacobi_asym`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use jacobi_asymptotics as core;
use jacobi_asymptotics::scan::{self, OrderConfig, OrderTarget, ScanConfig, WindowPolicy};
use jacobi_asymptotics::ApproxKind;

fn py_err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn spec(eps: f64) -> PyResult<core::ModulusSpec> {
    core::ModulusSpec::new(eps).map_err(py_err)
}

fn kind(tag: &str) -> PyResult<ApproxKind> {
    tag.parse().map_err(py_err)
}

#[pyclass(name = "ModulusSpec", frozen)]
struct PyModulusSpec {
    inner: core::ModulusSpec,
}

#[pymethods]
impl PyModulusSpec {
    #[new]
    fn new(eps: f64) -> PyResult<Self> {
        Ok(Self { inner: spec(eps)? })
    }

    #[getter]
    fn eps(&self) -> f64 {
        self.inner.eps()
    }

    #[getter]
    fn m(&self) -> f64 {
        self.inner.m()
    }

    #[getter]
    fn mu(&self) -> f64 {
        self.inner.mu()
    }

    fn __repr__(&self) -> String {
        format!("ModulusSpec(eps={:?})", self.inner.eps())
    }
}

/// Complete elliptic integral K(1 - eps) by AGM.
#[pyfunction]
fn complete_k(eps: f64) -> PyResult<f64> {
    core::complete_k(&spec(eps)?).map_err(py_err)
}

/// (sn, cn, dn) at parameter m = 1 - eps.
#[pyfunction]
fn jacobi_sn(t: f64, eps: f64) -> PyResult<(f64, f64, f64)> {
    let j = core::jacobi_sn(t, &spec(eps)?).map_err(py_err)?;
    Ok((j.sn, j.cn, j.dn))
}

#[pyfunction]
#[pyo3(signature = (eps, order = 4))]
fn k_asymptotic(eps: f64, order: u32) -> PyResult<f64> {
    core::k_asymptotic(&spec(eps)?, order).map_err(py_err)
}

#[pyfunction]
fn k_handbook(eps: f64) -> PyResult<f64> {
    core::k_handbook(&spec(eps)?).map_err(py_err)
}

#[pyfunction]
fn k_mu_series(eps: f64) -> PyResult<f64> {
    core::k_mu_series(&spec(eps)?).map_err(py_err)
}

#[pyfunction]
fn i0_closed_form(mu: f64) -> PyResult<f64> {
    core::i0_closed_form(mu).map_err(py_err)
}

/// Evaluate an approximation by tag: handbook-sn, outer, inner, composite,
/// composite-second, full-period.
#[pyfunction]
#[pyo3(signature = (approx, t, eps, order = None))]
fn approx_eval(approx: &str, t: f64, eps: f64, order: Option<u32>) -> PyResult<f64> {
    let k = kind(approx)?;
    core::approx_eval(
        k,
        t,
        &spec(eps)?,
        order.unwrap_or_else(|| k.default_order()),
    )
    .map_err(py_err)
}

/// Returns (rows, max_abs_err, argmax_t); rows are (t, oracle, approx, abs_err, rel_err).
#[pyfunction]
#[pyo3(signature = (eps, approx, t_min, t_max, samples, order = None))]
#[allow(clippy::type_complexity)]
fn run_scan(
    eps: f64,
    approx: &str,
    t_min: f64,
    t_max: f64,
    samples: usize,
    order: Option<u32>,
) -> PyResult<(Vec<(f64, f64, f64, f64, f64)>, f64, f64)> {
    let k = kind(approx)?;
    let config = ScanConfig {
        eps,
        kind: k,
        order: order.unwrap_or_else(|| k.default_order()),
        t_min,
        t_max,
        samples,
    };
    let r = scan::run_scan(&config).map_err(py_err)?;
    let rows = r
        .rows
        .iter()
        .map(|x| (x.t, x.oracle, x.approx, x.abs_err, x.rel_err))
        .collect();
    Ok((rows, r.max_abs_err, r.argmax_t))
}

/// Returns (fitted_order, r_squared, max_errs).
#[pyfunction]
#[pyo3(signature = (target, eps_list, window = "fixed", order = None, samples = 400))]
fn fit_order(
    target: &str,
    eps_list: Vec<f64>,
    window: &str,
    order: Option<u32>,
    samples: usize,
) -> PyResult<(f64, f64, Vec<f64>)> {
    let target: OrderTarget = target.parse().map_err(py_err)?;
    let window: WindowPolicy = window.parse().map_err(py_err)?;
    let order = order.unwrap_or(match target {
        OrderTarget::Sn(k) => k.default_order(),
        _ => 4,
    });
    let fit = scan::run_order(&OrderConfig {
        target,
        eps_list,
        window,
        order,
        samples,
    })
    .map_err(py_err)?;
    Ok((fit.fitted_order, fit.r_squared, fit.max_errs))
}

/// Returns (all_passed, rendered report).
#[pyfunction]
fn selftest() -> PyResult<(bool, String)> {
    let r = scan::run_selftest().map_err(py_err)?;
    Ok((r.all_passed(), r.render()))
}

#[pymodule]
fn jacobi_asym(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModulusSpec>()?;
    m.add_function(wrap_pyfunction!(complete_k, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi_sn, m)?)?;
    m.add_function(wrap_pyfunction!(k_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(k_handbook, m)?)?;
    m.add_function(wrap_pyfunction!(k_mu_series, m)?)?;
    m.add_function(wrap_pyfunction!(i0_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(approx_eval, m)?)?;
    m.add_function(wrap_pyfunction!(run_scan, m)?)?;
    m.add_function(wrap_pyfunction!(fit_order, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}

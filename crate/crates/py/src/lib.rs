//! Python bindings. Domain errors surface as `ValueError`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use noonloss as nl;

fn err(e: nl::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn probe(n: u64) -> PyResult<nl::NoonProbe> {
    nl::NoonProbe::new(n).map_err(err)
}

/// Beam-splitter loss on the signal arm.
#[pyclass(name = "LossChannel", frozen, eq, from_py_object)]
#[derive(Clone, Copy, PartialEq)]
pub struct PyLossChannel(pub nl::LossChannel);

#[pymethods]
impl PyLossChannel {
    #[new]
    #[pyo3(signature = (eta, theta_t = 0.0))]
    fn new(eta: f64, theta_t: f64) -> PyResult<Self> {
        nl::LossChannel::new(eta, theta_t).map(Self).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (loss, theta_t = 0.0))]
    fn from_loss(loss: f64, theta_t: f64) -> PyResult<Self> {
        nl::LossChannel::from_loss(loss, theta_t).map(Self).map_err(err)
    }

    #[getter]
    fn eta(&self) -> f64 {
        self.0.eta()
    }

    #[getter]
    fn theta_t(&self) -> f64 {
        self.0.theta_t()
    }

    #[getter]
    fn loss(&self) -> f64 {
        self.0.loss()
    }

    fn __repr__(&self) -> String {
        format!("LossChannel(eta={}, theta_t={})", self.0.eta(), self.0.theta_t())
    }
}

/// Total photon budget and baseline scale.
#[pyclass(name = "PhotonBudget", frozen, eq, from_py_object)]
#[derive(Clone, Copy, PartialEq)]
pub struct PyPhotonBudget(pub nl::PhotonBudget);

#[pymethods]
impl PyPhotonBudget {
    #[new]
    #[pyo3(signature = (n_total, kappa = 1.0))]
    fn new(n_total: u64, kappa: f64) -> PyResult<Self> {
        nl::PhotonBudget::new(n_total, kappa).map(Self).map_err(err)
    }

    #[getter]
    fn n_total(&self) -> u64 {
        self.0.n_total()
    }

    #[getter]
    fn kappa(&self) -> f64 {
        self.0.kappa()
    }

    fn measurements(&self, n: u64) -> PyResult<f64> {
        Ok(self.0.measurements(probe(n)?))
    }

    fn __repr__(&self) -> String {
        format!("PhotonBudget(n_total={}, kappa={})", self.0.n_total(), self.0.kappa())
    }
}

#[pyclass(name = "PrecisionReport", frozen, get_all, skip_from_py_object)]
#[derive(Clone, Copy)]
pub struct PyPrecisionReport {
    pub mean: f64,
    pub variance: f64,
    pub snr: f64,
    pub min_phase: f64,
    pub log_min_phase: f64,
    pub degenerate: bool,
}

#[pyclass(name = "OptimumResult", frozen, get_all, skip_from_py_object)]
#[derive(Clone, Copy)]
pub struct PyOptimumResult {
    pub n_star: u64,
    pub precision_at_opt: f64,
    pub continuous_n: f64,
    pub asymptotic_n: f64,
    pub asymptotic_precision: f64,
}

#[pyfunction]
fn mean_detection(n: u64, channel: &PyLossChannel, phi: f64) -> PyResult<f64> {
    Ok(nl::mean_detection(probe(n)?, &channel.0, phi))
}

#[pyfunction]
fn variance_detection(n: u64, channel: &PyLossChannel, phi: f64) -> PyResult<f64> {
    Ok(nl::variance_detection(probe(n)?, &channel.0, phi))
}

#[pyfunction]
#[pyo3(signature = (n, channel, phi0 = None, delta_phi = 1e-3))]
fn precision_report(
    n: u64,
    channel: &PyLossChannel,
    phi0: Option<f64>,
    delta_phi: f64,
) -> PyResult<PyPrecisionReport> {
    let p = probe(n)?;
    let phi0 = phi0.unwrap_or_else(|| nl::optimal_phase(p, &channel.0));
    let op = nl::OperatingPoint::new(phi0, delta_phi).map_err(err)?;
    let r = nl::precision_report(p, &channel.0, op);
    Ok(PyPrecisionReport {
        mean: r.mean,
        variance: r.variance,
        snr: r.snr,
        min_phase: r.min_phase,
        log_min_phase: r.log_min_phase,
        degenerate: r.degenerate,
    })
}

#[pyfunction]
fn min_phase_at(n: u64, channel: &PyLossChannel, phi0: f64) -> PyResult<f64> {
    Ok(nl::min_phase_at(probe(n)?, &channel.0, phi0))
}

#[pyfunction]
fn optimal_phase(n: u64, channel: &PyLossChannel) -> PyResult<f64> {
    Ok(nl::optimal_phase(probe(n)?, &channel.0))
}

#[pyfunction]
fn min_phase_opt(n: u64, eta: f64) -> PyResult<f64> {
    nl::min_phase_opt(probe(n)?, eta).map_err(err)
}

#[pyfunction]
fn log_min_phase_opt(n: u64, eta: f64) -> PyResult<f64> {
    nl::log_min_phase_opt(probe(n)?, eta).map_err(err)
}

#[pyfunction]
fn d_precision_dn(n: f64, eta: f64) -> PyResult<f64> {
    nl::d_precision_dn(n, eta).map_err(err)
}

#[pyfunction]
fn d_log_precision_dn(n: f64, eta: f64) -> PyResult<f64> {
    nl::d_log_precision_dn(n, eta).map_err(err)
}

/// `(mean, variance)` from the Fock-space calculation.
#[pyfunction]
fn oracle_moments(n: u64, channel: &PyLossChannel, phi: f64) -> PyResult<(f64, f64)> {
    let m = nl::oracle_moments(n, &channel.0, phi).map_err(err)?;
    Ok((m.mean, m.variance))
}

#[pyfunction]
#[pyo3(signature = (eta, n_cap = nl::DEFAULT_N_CAP))]
fn n_min(eta: f64, n_cap: u64) -> PyResult<PyOptimumResult> {
    let r = nl::n_min_integer(eta, n_cap).map_err(err)?;
    Ok(PyOptimumResult {
        n_star: r.n_star,
        precision_at_opt: r.precision_at_opt,
        continuous_n: r.continuous_n,
        asymptotic_n: r.asymptotic_n,
        asymptotic_precision: r.asymptotic_precision,
    })
}

#[pyfunction]
fn asymptotic_optimum(loss: f64) -> PyResult<(f64, f64)> {
    nl::asymptotic_optimum(loss).map_err(err)
}

#[pyfunction]
fn r_noon(n: u64, eta: f64) -> PyResult<f64> {
    nl::r_noon(probe(n)?, eta).map_err(err)
}

#[pyfunction]
fn log_r_noon(n: u64, eta: f64) -> PyResult<f64> {
    nl::log_r_noon(probe(n)?, eta).map_err(err)
}

#[pyfunction]
fn noon_precision_budgeted(n: u64, budget: &PyPhotonBudget, eta: f64) -> PyResult<f64> {
    nl::noon_precision_budgeted(probe(n)?, &budget.0, eta).map_err(err)
}

#[pyfunction]
fn unentangled_precision(budget: &PyPhotonBudget, eta: f64) -> PyResult<f64> {
    nl::unentangled_precision(&budget.0, eta).map_err(err)
}

#[pyfunction]
fn n_tilde_min(eta: f64, budget: &PyPhotonBudget) -> PyResult<u64> {
    nl::n_tilde_min_integer(eta, &budget.0).map_err(err)
}

#[pyfunction]
fn d_rnoon_dn_largeloss(n: f64, eta: f64) -> PyResult<f64> {
    nl::d_rnoon_dn_largeloss(n, eta).map_err(err)
}

/// The seven loss constants keyed as on the command line.
#[pyfunction]
fn constants(py: Python<'_>) -> PyResult<Bound<'_, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("nu", nl::solve_nu())?;
    d.set_item("mu", nl::mu())?;
    d.set_item("eta_c", nl::eta_critical())?;
    d.set_item("L_c", nl::loss_critical())?;
    d.set_item("nu_tilde", nl::solve_nu_tilde())?;
    d.set_item("mu_tilde", nl::mu_tilde())?;
    d.set_item("L_tilde_c", nl::l_tilde_critical())?;
    Ok(d)
}

/// Adds every class and function to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLossChannel>()?;
    m.add_class::<PyPhotonBudget>()?;
    m.add_class::<PyPrecisionReport>()?;
    m.add_class::<PyOptimumResult>()?;
    m.add_function(wrap_pyfunction!(mean_detection, m)?)?;
    m.add_function(wrap_pyfunction!(variance_detection, m)?)?;
    m.add_function(wrap_pyfunction!(precision_report, m)?)?;
    m.add_function(wrap_pyfunction!(min_phase_at, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_phase, m)?)?;
    m.add_function(wrap_pyfunction!(min_phase_opt, m)?)?;
    m.add_function(wrap_pyfunction!(log_min_phase_opt, m)?)?;
    m.add_function(wrap_pyfunction!(d_precision_dn, m)?)?;
    m.add_function(wrap_pyfunction!(d_log_precision_dn, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_moments, m)?)?;
    m.add_function(wrap_pyfunction!(n_min, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_optimum, m)?)?;
    m.add_function(wrap_pyfunction!(r_noon, m)?)?;
    m.add_function(wrap_pyfunction!(log_r_noon, m)?)?;
    m.add_function(wrap_pyfunction!(noon_precision_budgeted, m)?)?;
    m.add_function(wrap_pyfunction!(unentangled_precision, m)?)?;
    m.add_function(wrap_pyfunction!(n_tilde_min, m)?)?;
    m.add_function(wrap_pyfunction!(d_rnoon_dn_largeloss, m)?)?;
    m.add_function(wrap_pyfunction!(constants, m)?)?;
    Ok(())
}

#[pymodule]
fn noonloss_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}

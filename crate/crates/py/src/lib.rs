//! Python bindings: the main types and operations of `photsub` as plain
//! functions. Entanglement reports come back as dicts, channel matrices as
//! nested lists. Domain violations raise `ValueError`.

use photsub::sweep::{find_measure_crossing, uniform_grid};
use photsub::{EntanglementReport, Measure, ModelParams, Resource, SignalParams};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use std::str::FromStr;

fn to_py_err(e: photsub::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn params(lam: f64, transmittance: f64, kmax: usize) -> PyResult<ModelParams> {
    ModelParams::new(lam, transmittance, kmax, 1e-16).map_err(to_py_err)
}

fn resource(kind: &str) -> PyResult<Resource> {
    Resource::from_str(kind).map_err(to_py_err)
}

fn report_dict<'py>(py: Python<'py>, r: &EntanglementReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("negativity", r.negativity)?;
    d.set_item("log_negativity", r.log_negativity)?;
    d.set_item("delta_trace", r.delta_trace)?;
    d.set_item("kmax", r.kmax)?;
    d.set_item("negativity_raw", r.negativity_raw)?;
    Ok(d)
}

/// Error function.
#[pyfunction]
fn erf(x: f64) -> f64 {
    photsub::erf(x)
}

/// Schmidt coefficient alpha_n of the two-mode squeezed vacuum.
#[pyfunction]
fn schmidt_coeff(lam: f64, n: usize) -> PyResult<f64> {
    photsub::schmidt_coeff(lam, n).map_err(to_py_err)
}

/// Beam-splitter coefficient xi_{nk}.
#[pyfunction]
fn bs_coeff(n: u64, k: u64, transmittance: f64) -> PyResult<f64> {
    photsub::bs_coeff(n, k, transmittance).map_err(to_py_err)
}

/// Probability of detecting one photon in each tap arm.
#[pyfunction]
#[pyo3(signature = (lam, transmittance=0.9))]
fn pdet_pure(lam: f64, transmittance: f64) -> PyResult<f64> {
    Ok(photsub::pdet_pure(&params(lam, transmittance, 0)?))
}

/// Probability of at least one photon in each tap arm.
#[pyfunction]
#[pyo3(signature = (lam, transmittance=0.9))]
fn pdet_mixed(lam: f64, transmittance: f64) -> PyResult<f64> {
    Ok(photsub::pdet_mixed(&params(lam, transmittance, 0)?))
}

/// Schmidt coefficients of the pure photon-subtracted state.
#[pyfunction]
#[pyo3(signature = (lam, transmittance=0.9, kmax=50))]
fn pure_state_coeffs(lam: f64, transmittance: f64, kmax: usize) -> PyResult<Vec<f64>> {
    let state = photsub::pure_subtracted_state(&params(lam, transmittance, kmax)?)
        .map_err(to_py_err)?;
    Ok(state.coeffs().to_vec())
}

/// Schmidt coefficients alpha_n of the squeezed vacuum, truncated at kmax.
#[pyfunction]
#[pyo3(signature = (lam, kmax=50))]
fn sv_state_coeffs(lam: f64, kmax: usize) -> PyResult<Vec<f64>> {
    let state = photsub::squeezed_vacuum_state(lam, kmax).map_err(to_py_err)?;
    Ok(state.coeffs().to_vec())
}

/// Fock element <m1, n1| rho_NG |m2, n2> of the on/off-conditioned state.
#[pyfunction]
#[pyo3(signature = (m1, m2, n1, n2, lam, transmittance=0.9))]
fn mixed_density_element(
    m1: usize,
    m2: usize,
    n1: usize,
    n2: usize,
    lam: f64,
    transmittance: f64,
) -> PyResult<f64> {
    photsub::mixed_density_element(
        photsub::DensityElementKey::new(m1, m2, n1, n2),
        &params(lam, transmittance, 0)?,
    )
    .map_err(to_py_err)
}

/// Mean photon number of the conditioned mixed state.
#[pyfunction]
#[pyo3(signature = (lam, transmittance=0.9))]
fn mean_photon_mixed(lam: f64, transmittance: f64) -> PyResult<f64> {
    photsub::mean_photon_mixed(&params(lam, transmittance, 0)?).map_err(to_py_err)
}

/// Mean photon number of the squeezed vacuum.
#[pyfunction]
fn mean_photon_sq(lam: f64) -> PyResult<f64> {
    photsub::mean_photon_sq(lam).map_err(to_py_err)
}

/// Squeezed-vacuum negativity closed forms.
#[pyfunction]
fn sv_negativity(py: Python<'_>, lam: f64) -> PyResult<Py<PyDict>> {
    let r = photsub::sv_negativity(lam).map_err(to_py_err)?;
    Ok(report_dict(py, &r)?.unbind())
}

/// Ideal T -> 1 photon-subtraction limit.
#[pyfunction]
fn limit_t1_negativity(py: Python<'_>, lam: f64) -> PyResult<Py<PyDict>> {
    let r = photsub::limit_t1_negativity(lam).map_err(to_py_err)?;
    Ok(report_dict(py, &r)?.unbind())
}

/// Negativity of the pure photon-subtracted state (Schmidt closed form).
#[pyfunction]
#[pyo3(signature = (lam, transmittance=0.9, kmax=50))]
fn pure_negativity(py: Python<'_>, lam: f64, transmittance: f64, kmax: usize) -> PyResult<Py<PyDict>> {
    let state = photsub::pure_subtracted_state(&params(lam, transmittance, kmax)?)
        .map_err(to_py_err)?;
    Ok(report_dict(py, &photsub::schmidt_negativity(&state))?.unbind())
}

/// Negativity of the on/off-conditioned mixed state via the block-diagonal
/// partial transpose.
#[pyfunction]
#[pyo3(signature = (lam, transmittance=0.9, kmax=50))]
fn mixed_negativity(py: Python<'_>, lam: f64, transmittance: f64, kmax: usize) -> PyResult<Py<PyDict>> {
    let pt = photsub::build_pt_blocks(&params(lam, transmittance, kmax)?).map_err(to_py_err)?;
    let r = photsub::negativity_from_blocks(&pt).map_err(to_py_err)?;
    Ok(report_dict(py, &r)?.unbind())
}

/// Average teleportation fidelity with the squeezed-vacuum resource.
#[pyfunction]
fn fid_sq(lam: f64) -> PyResult<f64> {
    Ok(photsub::fid_sq(lam).map_err(to_py_err)?.value)
}

/// Average teleportation fidelity with the pure subtracted resource.
#[pyfunction]
#[pyo3(signature = (lam, transmittance=0.9))]
fn fid_pure(lam: f64, transmittance: f64) -> PyResult<f64> {
    Ok(photsub::fid_pure(&params(lam, transmittance, 0)?).map_err(to_py_err)?.value)
}

/// Average teleportation fidelity with the mixed subtracted resource.
#[pyfunction]
#[pyo3(signature = (lam, transmittance=0.9))]
fn fid_mixed(lam: f64, transmittance: f64) -> PyResult<f64> {
    Ok(photsub::fid_mixed(&params(lam, transmittance, 0)?).map_err(to_py_err)?.value)
}

/// Dense-coding mutual information with the squeezed-vacuum resource.
#[pyfunction]
fn i_sq(lam: f64, beta: f64) -> PyResult<f64> {
    photsub::i_sq(lam, beta).map_err(to_py_err)
}

/// Dense-coding mutual information with the pure subtracted resource.
#[pyfunction]
#[pyo3(signature = (lam, beta, transmittance=0.9))]
fn i_pure(lam: f64, beta: f64, transmittance: f64) -> PyResult<f64> {
    let sig = SignalParams::new(beta).map_err(to_py_err)?;
    photsub::i_pure(&params(lam, transmittance, 0)?, &sig).map_err(to_py_err)
}

/// Dense-coding mutual information with the mixed subtracted resource.
#[pyfunction]
#[pyo3(signature = (lam, beta, transmittance=0.9))]
fn i_mixed(lam: f64, beta: f64, transmittance: f64) -> PyResult<f64> {
    let sig = SignalParams::new(beta).map_err(to_py_err)?;
    photsub::i_mixed(&params(lam, transmittance, 0)?, &sig).map_err(to_py_err)
}

/// 4x4 QPSK channel matrix for a resource kind ("sq", "pure" or "mixed").
#[pyfunction]
#[pyo3(signature = (kind, lam, beta, transmittance=0.9))]
fn channel_matrix(kind: &str, lam: f64, beta: f64, transmittance: f64) -> PyResult<Vec<Vec<f64>>> {
    let sig = SignalParams::new(beta).map_err(to_py_err)?;
    let ch = photsub::channel_matrix(resource(kind)?, &params(lam, transmittance, 0)?, &sig)
        .map_err(to_py_err)?;
    Ok(ch.probs.iter().map(|row| row.to_vec()).collect())
}

/// Mutual information of a 4x4 row-stochastic channel matrix, in bits.
#[pyfunction]
fn mutual_information(probs: Vec<Vec<f64>>) -> PyResult<f64> {
    if probs.len() != 4 || probs.iter().any(|r| r.len() != 4) {
        return Err(PyValueError::new_err("channel matrix must be 4x4"));
    }
    let mut m = [[0.0; 4]; 4];
    for (i, row) in probs.iter().enumerate() {
        m[i].copy_from_slice(row);
    }
    Ok(photsub::mutual_information(&photsub::ChannelMatrix4 { probs: m }))
}

/// Lambda where a subtracted-resource measure curve crosses the
/// squeezed-vacuum curve.
#[pyfunction]
#[pyo3(signature = (measure, case, transmittance=0.9, kmax=50, beta=1.5, lo=0.05, hi=0.98, scan=40, tol=1e-4))]
#[allow(clippy::too_many_arguments)]
fn crossover(
    measure: &str,
    case: &str,
    transmittance: f64,
    kmax: usize,
    beta: f64,
    lo: f64,
    hi: f64,
    scan: usize,
    tol: f64,
) -> PyResult<f64> {
    let measure = Measure::from_str(measure).map_err(to_py_err)?;
    let case = resource(case)?;
    if case == Resource::Sq {
        return Err(PyValueError::new_err("case must be pure or mixed"));
    }
    let base = params(0.0, transmittance, kmax)?;
    let sig = SignalParams::new(beta).map_err(to_py_err)?;
    let r = find_measure_crossing(measure, case, &base, Some(&sig), (lo, hi, scan), tol)
        .map_err(to_py_err)?;
    Ok(r.lambda_star)
}

/// Sweep a measure over `n` lambda points in `[lo, hi]`; returns rows of
/// `(lambda, value_sq, value_pure, value_mixed)` with `None` where a value
/// is unavailable.
#[pyfunction]
#[pyo3(signature = (measure, lo=0.05, hi=0.9, n=50, transmittance=0.9, kmax=50, beta=1.5))]
#[allow(clippy::type_complexity)]
fn sweep(
    measure: &str,
    lo: f64,
    hi: f64,
    n: usize,
    transmittance: f64,
    kmax: usize,
    beta: f64,
) -> PyResult<Vec<(f64, Option<f64>, Option<f64>, Option<f64>)>> {
    let measure = Measure::from_str(measure).map_err(to_py_err)?;
    let base = params(0.0, transmittance, kmax)?;
    let sig = SignalParams::new(beta).map_err(to_py_err)?;
    let grid = uniform_grid(lo, hi, n);
    Ok(photsub::sweep::sweep(measure, &grid, &base, Some(&sig))
        .into_iter()
        .map(|r| (r.lambda, r.value_sq, r.value_pure, r.value_mixed))
        .collect())
}

/// Dense-coding crossings along a beta ladder; returns rows of
/// `(beta, lambda_star_pure, lambda_star_mixed)`.
#[pyfunction]
#[pyo3(signature = (betas, transmittance=0.9, kmax=50))]
#[allow(clippy::type_complexity)]
fn dense_coding_limit_study(
    betas: Vec<f64>,
    transmittance: f64,
    kmax: usize,
) -> PyResult<Vec<(f64, Option<f64>, Option<f64>)>> {
    let base = params(0.0, transmittance, kmax)?;
    Ok(photsub::dense_coding_limit_study(&betas, &base)
        .into_iter()
        .map(|r| (r.beta, r.lambda_star_pure, r.lambda_star_mixed))
        .collect())
}

#[pymodule]
fn photsub_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(erf, m)?)?;
    m.add_function(wrap_pyfunction!(schmidt_coeff, m)?)?;
    m.add_function(wrap_pyfunction!(bs_coeff, m)?)?;
    m.add_function(wrap_pyfunction!(pdet_pure, m)?)?;
    m.add_function(wrap_pyfunction!(pdet_mixed, m)?)?;
    m.add_function(wrap_pyfunction!(pure_state_coeffs, m)?)?;
    m.add_function(wrap_pyfunction!(sv_state_coeffs, m)?)?;
    m.add_function(wrap_pyfunction!(mixed_density_element, m)?)?;
    m.add_function(wrap_pyfunction!(mean_photon_mixed, m)?)?;
    m.add_function(wrap_pyfunction!(mean_photon_sq, m)?)?;
    m.add_function(wrap_pyfunction!(sv_negativity, m)?)?;
    m.add_function(wrap_pyfunction!(limit_t1_negativity, m)?)?;
    m.add_function(wrap_pyfunction!(pure_negativity, m)?)?;
    m.add_function(wrap_pyfunction!(mixed_negativity, m)?)?;
    m.add_function(wrap_pyfunction!(fid_sq, m)?)?;
    m.add_function(wrap_pyfunction!(fid_pure, m)?)?;
    m.add_function(wrap_pyfunction!(fid_mixed, m)?)?;
    m.add_function(wrap_pyfunction!(i_sq, m)?)?;
    m.add_function(wrap_pyfunction!(i_pure, m)?)?;
    m.add_function(wrap_pyfunction!(i_mixed, m)?)?;
    m.add_function(wrap_pyfunction!(channel_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(mutual_information, m)?)?;
    m.add_function(wrap_pyfunction!(crossover, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(dense_coding_limit_study, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}

//! Python bindings for the Berezin norm library.
//!
//! Matrices cross the boundary as nested lists of Python complex (or
//! float) values, row major.  Reports come back as plain dicts decoded
//! from the same JSON the CLI emits.

use berezin::berezin::{
    equality_witness, min_t_berezin, unitary_check, SymbolMatrix,
};
use berezin::bounds::{self, EvalOpts, BOUND_IDS};
use berezin::harness::{mutation_self_test, run_campaign, CampaignConfig};
use berezin::model::{hardy_model, model_from_onb, standard_model, KernelModel, Operator};
use berezin::{C64, CMatrix};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::IntoPyObjectExt;
use pyo3::types::PyDict;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_matrix(rows: Vec<Vec<C64>>) -> PyResult<CMatrix> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(PyValueError::new_err("matrix must be square and nonempty"));
    }
    Ok(CMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

fn json_to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    match v {
        serde_json::Value::Null => Ok(py.None()),
        serde_json::Value::Bool(b) => b.into_py_any(py),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_py_any(py)
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_py_any(py)
            }
        }
        serde_json::Value::String(s) => s.into_py_any(py),
        serde_json::Value::Array(items) => {
            let out: Vec<Py<PyAny>> =
                items.iter().map(|x| json_to_py(py, x)).collect::<PyResult<_>>()?;
            out.into_py_any(py)
        }
        serde_json::Value::Object(map) => {
            let d = PyDict::new(py);
            for (k, val) in map {
                d.set_item(k, json_to_py(py, val)?)?;
            }
            d.into_py_any(py)
        }
    }
}

fn report_to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let v = serde_json::to_value(value).map_err(err)?;
    json_to_py(py, &v)
}

/// A finite reproducing kernel model.
#[pyclass(name = "Model")]
struct PyModel {
    inner: KernelModel,
}

#[pymethods]
impl PyModel {
    /// Standard basis model on C^n.
    #[staticmethod]
    fn standard(n: usize) -> PyResult<Self> {
        Ok(Self { inner: standard_model(n).map_err(err)? })
    }

    /// Truncated Hardy space model sampled on rings of the disk.
    #[staticmethod]
    fn hardy(trunc: usize, radii: Vec<f64>, angles_per_ring: usize) -> PyResult<Self> {
        Ok(Self { inner: hardy_model(trunc, &radii, angles_per_ring).map_err(err)? })
    }

    /// Model built from kernel evaluations against an orthonormal basis
    /// (columns are kernel vectors).
    #[staticmethod]
    fn from_onb(evaluations: Vec<Vec<C64>>) -> PyResult<Self> {
        let m = to_matrix(evaluations)?;
        Ok(Self { inner: model_from_onb(&m).map_err(err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn point_count(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Model(dim={}, points={})", self.inner.dim(), self.inner.len())
    }
}

fn symbol(model: &PyModel, matrix: Vec<Vec<C64>>) -> PyResult<SymbolMatrix> {
    let a = Operator::new(to_matrix(matrix)?);
    SymbolMatrix::new(&model.inner, &a).map_err(err)
}

/// Berezin number: max over λ of |⟨A k̂_λ, k̂_λ⟩|.
#[pyfunction]
fn berezin_number(model: &PyModel, matrix: Vec<Vec<C64>>) -> PyResult<f64> {
    Ok(symbol(model, matrix)?.berezin_number().value)
}

/// Berezin norm: max over pairs of |⟨A k̂_λ, k̂_μ⟩|.
#[pyfunction]
fn berezin_norm(model: &PyModel, matrix: Vec<Vec<C64>>) -> PyResult<f64> {
    Ok(symbol(model, matrix)?.berezin_norm().value)
}

/// t-Berezin norm at a fixed mixing parameter t in [0, 1].
#[pyfunction]
fn t_berezin_norm(model: &PyModel, matrix: Vec<Vec<C64>>, t: f64) -> PyResult<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(PyValueError::new_err(format!("t must lie in [0, 1], got {t}")));
    }
    Ok(symbol(model, matrix)?.t_norm(t).value)
}

/// Minimizes t over [0, 1/2]; returns (t_star, value).
#[pyfunction]
#[pyo3(signature = (model, matrix, tol_t = 1e-6))]
fn min_t(model: &PyModel, matrix: Vec<Vec<C64>>, tol_t: f64) -> PyResult<(f64, f64)> {
    let a = Operator::new(to_matrix(matrix)?);
    let r = min_t_berezin(&model.inner, &a, tol_t).map_err(err)?;
    Ok((r.t_star, r.value))
}

/// Equality test ‖A‖_{t-ber} = ‖A‖_ber with an attaining pair of point
/// indices when equality holds.
#[pyfunction]
#[pyo3(signature = (model, matrix, t, tol = 1e-9))]
fn equality_test(
    model: &PyModel,
    matrix: Vec<Vec<C64>>,
    t: f64,
    tol: f64,
) -> PyResult<(bool, Option<(usize, usize)>)> {
    let a = Operator::new(to_matrix(matrix)?);
    let w = equality_witness(&model.inner, &a, t, tol).map_err(err)?;
    Ok((w.equal, w.witness))
}

/// Unitary test through t-Berezin norms of A*A and its inverse.
#[pyfunction]
#[pyo3(signature = (model, matrix, t = 0.5, tol = 1e-9))]
fn unitary_test(model: &PyModel, matrix: Vec<Vec<C64>>, t: f64, tol: f64) -> PyResult<bool> {
    let a = Operator::new(to_matrix(matrix)?);
    Ok(unitary_check(&model.inner, &a, t, tol).map_err(err)?.unitary)
}

/// Identifiers of every implemented inequality.
#[pyfunction]
fn bound_ids() -> Vec<&'static str> {
    BOUND_IDS.to_vec()
}

/// Evaluates the three-part sandwich inequality; returns a list of dicts
/// with lhs, rhs, slack and holds per part.
#[pyfunction]
fn check_sandwich(
    py: Python<'_>,
    model: &PyModel,
    matrix: Vec<Vec<C64>>,
    t: f64,
) -> PyResult<Py<PyAny>> {
    let a = Operator::new(to_matrix(matrix)?);
    let reports =
        bounds::sandwich(&model.inner, &a, t, &EvalOpts::default()).map_err(err)?;
    report_to_py(py, &reports)
}

/// Runs the randomized verification campaign and returns the suite
/// report as a dict.
#[pyfunction]
#[pyo3(signature = (seed = 20240501, cases_per = 25, bounds = None))]
fn verify(
    py: Python<'_>,
    seed: u64,
    cases_per: usize,
    bounds: Option<Vec<String>>,
) -> PyResult<Py<PyAny>> {
    let cfg = CampaignConfig {
        seed,
        cases_per,
        bounds: bounds.unwrap_or_default(),
        ..CampaignConfig::default()
    };
    let report = run_campaign(&cfg).map_err(err)?;
    report_to_py(py, &report)
}

/// Miscales every right side by 0.9 and reports which bounds caught it.
#[pyfunction]
#[pyo3(signature = (seed = 20240501, cases_per = 2))]
fn self_test_mutation(py: Python<'_>, seed: u64, cases_per: usize) -> PyResult<Py<PyAny>> {
    let outcomes = mutation_self_test(seed, cases_per).map_err(err)?;
    report_to_py(py, &outcomes)
}

#[pymodule]
fn berezin_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModel>()?;
    m.add_function(wrap_pyfunction!(berezin_number, m)?)?;
    m.add_function(wrap_pyfunction!(berezin_norm, m)?)?;
    m.add_function(wrap_pyfunction!(t_berezin_norm, m)?)?;
    m.add_function(wrap_pyfunction!(min_t, m)?)?;
    m.add_function(wrap_pyfunction!(equality_test, m)?)?;
    m.add_function(wrap_pyfunction!(unitary_test, m)?)?;
    m.add_function(wrap_pyfunction!(bound_ids, m)?)?;
    m.add_function(wrap_pyfunction!(check_sandwich, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(self_test_mutation, m)?)?;
    Ok(())
}

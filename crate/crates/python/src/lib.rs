//! Python bindings: parameters, exact polynomials from each route, the
//! parity check, numeric helpers and the verification suites.
//!
//! Rationals cross the boundary as strings ("7/3"); polynomials as lists of
//! coefficient strings, lowest degree first. Suite reports come back as dicts.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

use miortho_core::case::parse_index_list;
use miortho_core::engine::{self, parity_check, Route};
use miortho_core::numeric::{self, QuadratureSpec, WaveContext};
use miortho_core::rational::{format_rational, parse_rational};
use miortho_core::suite::{self, EquivalenceOptions, NumericOptions, Report};
use miortho_core::{CaseKey, Error, Family, IndexSpec, Poly, SystemParams};

fn py_err(e: Error) -> PyErr {
    if e.is_validation() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn parse_family(s: &str) -> PyResult<Family> {
    match s.to_ascii_lowercase().as_str() {
        "laguerre" | "l" => Ok(Family::Laguerre),
        "jacobi" | "j" => Ok(Family::Jacobi),
        other => Err(PyValueError::new_err(format!("unknown family {other:?}"))),
    }
}

fn parse_route(s: &str) -> PyResult<Route> {
    match s.to_ascii_lowercase().as_str() {
        "w" => Ok(Route::W),
        "a" => Ok(Route::A),
        "b" => Ok(Route::B),
        other => Err(PyValueError::new_err(format!("unknown route {other:?}, expected w, a or b"))),
    }
}

/// Accepts int or str ("7/3").
fn rational_arg(v: &Bound<'_, PyAny>) -> PyResult<miortho_core::Rational> {
    let s = match v.extract::<i64>() {
        Ok(i) => i.to_string(),
        Err(_) => v.extract::<String>()?,
    };
    parse_rational(&s).map_err(py_err)
}

fn coeffs(p: &Poly) -> Vec<String> {
    p.coeff_strings()
}

fn to_py(py: Python<'_>, v: &impl serde::Serialize) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "Params", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyParams {
    inner: SystemParams,
}

#[pymethods]
impl PyParams {
    #[new]
    #[pyo3(signature = (family, g, h=None))]
    fn new(family: &str, g: &Bound<'_, PyAny>, h: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let family = parse_family(family)?;
        let g = rational_arg(g)?;
        let h = h.map(rational_arg).transpose()?;
        Ok(PyParams { inner: SystemParams::new(family, g, h).map_err(py_err)? })
    }

    #[getter]
    fn family(&self) -> &'static str {
        match self.inner.family() {
            Family::Laguerre => "laguerre",
            Family::Jacobi => "jacobi",
        }
    }

    #[getter]
    fn g(&self) -> String {
        format_rational(self.inner.g())
    }

    #[getter]
    fn h(&self) -> Option<String> {
        self.inner.h_opt().map(format_rational)
    }

    /// Jacobi only: the parameters with g and h exchanged.
    fn swapped(&self) -> PyResult<Self> {
        Ok(PyParams { inner: self.inner.swapped().map_err(py_err)? })
    }

    fn __repr__(&self) -> String {
        match self.h() {
            Some(h) => format!("Params('jacobi', '{}', '{}')", self.g(), h),
            None => format!("Params('laguerre', '{}')", self.g()),
        }
    }
}

/// One (parameters, index set, n) case.
#[pyclass(name = "Case", frozen)]
struct PyCase {
    params: SystemParams,
    index: IndexSpec,
    n: u32,
    ctx: WaveContext,
}

impl PyCase {
    fn build(params: SystemParams, index: IndexSpec, n: u32) -> PyResult<Self> {
        let ctx = WaveContext::new(&params, &index, n).map_err(py_err)?;
        Ok(PyCase { params, index, n, ctx })
    }
}

#[pymethods]
impl PyCase {
    #[new]
    #[pyo3(signature = (params, index="", n=0))]
    fn new(params: &PyParams, index: &str, n: u32) -> PyResult<Self> {
        let seeds = parse_index_list(index).map_err(py_err)?;
        let index = IndexSpec::new(&params.inner, seeds).map_err(py_err)?;
        PyCase::build(params.inner.clone(), index, n)
    }

    /// Parses a canonical key such as "J g=7/3 h=11/4 D=I1,II2 n=3".
    #[staticmethod]
    fn from_key(key: &str) -> PyResult<Self> {
        let k: CaseKey = key.parse().map_err(py_err)?;
        let params = k.params().map_err(py_err)?;
        let index = k.index().map_err(py_err)?;
        PyCase::build(params, index, k.n)
    }

    #[getter]
    fn key(&self) -> String {
        CaseKey::new(&self.params, &self.index, self.n).to_string()
    }

    #[getter]
    fn n(&self) -> u32 {
        self.n
    }

    #[getter]
    fn m(&self) -> usize {
        self.index.m()
    }

    #[getter]
    fn energy(&self) -> f64 {
        self.ctx.energy()
    }

    #[pyo3(signature = (route="a"))]
    fn xi(&self, route: &str) -> PyResult<Vec<String>> {
        let p = engine::xi_by(parse_route(route)?, &self.params, &self.index).map_err(py_err)?;
        Ok(coeffs(&p))
    }

    #[pyo3(signature = (route="a"))]
    fn p(&self, route: &str) -> PyResult<Vec<String>> {
        let p = engine::p_by(parse_route(route)?, &self.params, &self.index, self.n).map_err(py_err)?;
        Ok(coeffs(&p))
    }

    /// True when routes W, A and B give identical Ξ and P.
    fn routes_agree(&self) -> PyResult<bool> {
        let results = Route::ALL
            .iter()
            .map(|&r| engine::compute(r, &self.params, &self.index, self.n))
            .collect::<Result<Vec<_>, _>>()
            .map_err(py_err)?;
        Ok(results.windows(2).all(|w| w[0].xi == w[1].xi && w[0].p == w[1].p))
    }

    fn parity(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let r = parity_check(&self.params, &self.index, self.n).map_err(py_err)?;
        to_py(py, &r)
    }

    fn weight(&self, eta: f64) -> PyResult<f64> {
        numeric::weight_density(&self.ctx, eta).map_err(py_err)
    }

    fn potential(&self, x: f64) -> PyResult<f64> {
        numeric::deformed_potential(&self.ctx, x).map_err(py_err)
    }

    fn wavefunction(&self, x: f64) -> PyResult<f64> {
        numeric::wavefunction(&self.ctx, x).map_err(py_err)
    }

    /// Max |(−∂² + U_D − E)φ| / max|φ| over the sample points (defaults per family).
    #[pyo3(signature = (xs=None, h=1e-3))]
    fn residual(&self, xs: Option<Vec<f64>>, h: f64) -> PyResult<f64> {
        let xs = xs.unwrap_or_else(|| numeric::residual_samples(self.params.family()));
        numeric::schrodinger_residual(&self.ctx, &xs, h).map_err(py_err)
    }

    /// (W_Ξ, W_P) built from the x-space functions at `x0`.
    fn x_wronskians(&self, x0: f64) -> PyResult<(f64, f64)> {
        numeric::x_wronskians(&self.ctx, x0).map_err(py_err)
    }

    fn x_wronskian_check(&self, py: Python<'_>, x0: f64) -> PyResult<Py<PyAny>> {
        let c = numeric::validate_x_wronskian(&self.ctx, x0).map_err(py_err)?;
        to_py(py, &c)
    }

    /// Gram matrix ⟨P_i, P_j⟩ for i, j ≤ max_n under the deformed weight.
    fn gram(&self, py: Python<'_>, max_n: u32) -> PyResult<Py<PyAny>> {
        let g = numeric::gram_matrix(&self.params, &self.index, max_n, &QuadratureSpec::default()).map_err(py_err)?;
        to_py(py, &g)
    }

    fn __repr__(&self) -> String {
        format!("Case('{}')", self.key())
    }
}

#[pyfunction]
#[pyo3(signature = (params, max_m=3, max_d=3))]
fn enumerate_index_sets(params: &PyParams, max_m: usize, max_d: u32) -> Vec<String> {
    suite::enumerate_index_sets(&params.inner, max_m, max_d).iter().map(IndexSpec::render).collect()
}

#[pyfunction]
fn representative_sets(params: &PyParams) -> Vec<String> {
    suite::representative_sets(&params.inner).iter().map(IndexSpec::render).collect()
}

#[pyfunction]
#[pyo3(signature = (params, max_m=3, max_d=3, max_n=4))]
fn equivalence(py: Python<'_>, params: &PyParams, max_m: usize, max_d: u32, max_n: u32) -> PyResult<Py<PyAny>> {
    let opts = EquivalenceOptions { max_m, max_d, max_n, timings: false };
    let r = py.detach(|| suite::equivalence_suite(&params.inner, &opts));
    to_py(py, &r)
}

#[pyfunction]
#[pyo3(signature = (max_n=10, draws=20))]
fn identities(py: Python<'_>, max_n: u32, draws: usize) -> PyResult<Py<PyAny>> {
    to_py(py, &suite::identity_suite(max_n, draws))
}

#[pyfunction]
#[pyo3(signature = (params, max_m=3, max_d=3, max_n=4))]
fn parity(py: Python<'_>, params: &PyParams, max_m: usize, max_d: u32, max_n: u32) -> PyResult<Py<PyAny>> {
    let r = suite::parity_suite(&params.inner, max_m, max_d, max_n).map_err(py_err)?;
    to_py(py, &r)
}

fn numeric_report(
    py: Python<'_>,
    params: &PyParams,
    max_n: u32,
    run: fn(&SystemParams, &[IndexSpec], &NumericOptions) -> Report,
) -> PyResult<Py<PyAny>> {
    let sets = suite::representative_sets(&params.inner);
    let opts = NumericOptions { max_n, ..NumericOptions::default() };
    let r = py.detach(|| run(&params.inner, &sets, &opts));
    to_py(py, &r)
}

/// Orthogonality over the representative index sets.
#[pyfunction]
#[pyo3(signature = (params, max_n=5))]
fn orthogonality(py: Python<'_>, params: &PyParams, max_n: u32) -> PyResult<Py<PyAny>> {
    numeric_report(py, params, max_n, suite::orthogonality_suite)
}

#[pyfunction]
#[pyo3(signature = (params, max_n=5))]
fn schrodinger(py: Python<'_>, params: &PyParams, max_n: u32) -> PyResult<Py<PyAny>> {
    numeric_report(py, params, max_n, suite::schrodinger_suite)
}

#[pyfunction]
#[pyo3(signature = (params, max_n=5))]
fn xwronskian(py: Python<'_>, params: &PyParams, max_n: u32) -> PyResult<Py<PyAny>> {
    numeric_report(py, params, max_n, suite::xwronskian_suite)
}

#[pymodule]
fn miortho(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParams>()?;
    m.add_class::<PyCase>()?;
    m.add_function(wrap_pyfunction!(enumerate_index_sets, m)?)?;
    m.add_function(wrap_pyfunction!(representative_sets, m)?)?;
    m.add_function(wrap_pyfunction!(equivalence, m)?)?;
    m.add_function(wrap_pyfunction!(identities, m)?)?;
    m.add_function(wrap_pyfunction!(parity, m)?)?;
    m.add_function(wrap_pyfunction!(orthogonality, m)?)?;
    m.add_function(wrap_pyfunction!(schrodinger, m)?)?;
    m.add_function(wrap_pyfunction!(xwronskian, m)?)?;
    Ok(())
}

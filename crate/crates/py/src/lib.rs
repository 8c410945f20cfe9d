//! Python bindings.

use std::sync::Arc;

use cuspdiff::classify;
use cuspdiff::cli::{self, Algebra, LaurentContext};
use cuspdiff::cuspops::{self, CuspShape};
use cuspdiff::exactpoly::{parse_rational, BasePoly};
use cuspdiff::gwa::{Embedding, GwaElement, GwaPresentation};
use cuspdiff::modactions::{act, LaurentVector};
use cuspdiff::skewlaurent::LaurentOp;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: cuspdiff::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn from_json(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (s,))?.unbind())
}

fn algebra(name: &str) -> PyResult<Algebra> {
    match name {
        "DA" => Ok(Algebra::DA),
        "bbA" => Ok(Algebra::BbA),
        "calA" => Ok(Algebra::CalA),
        "weyl" => Ok(Algebra::Weyl),
        _ => Err(PyValueError::new_err(format!("unknown algebra {name}"))),
    }
}

fn shape(m: &str) -> PyResult<CuspShape> {
    CuspShape::parse(m).map_err(err)
}

/// Polynomial in `h` (or `h1..hn`) with rational coefficients.
#[pyclass(name = "Poly", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPoly(BasePoly);

#[pymethods]
impl PyPoly {
    #[new]
    #[pyo3(signature = (text, nvars = 1))]
    fn new(text: &str, nvars: usize) -> PyResult<Self> {
        cli::parse_poly(text, nvars).map(PyPoly).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.checked_add(&other.0).map(PyPoly).map_err(err)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.0.checked_sub(&other.0).map(PyPoly).map_err(err)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.checked_mul(&other.0).map(PyPoly).map_err(err)
    }

    /// Value at a point given as strings or ints, returned as a string.
    fn eval(&self, point: Vec<String>) -> PyResult<String> {
        let p = point
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| PyValueError::new_err(format!("bad rational {s}"))))
            .collect::<PyResult<Vec<_>>>()?;
        self.0.eval(&p).map(|q| q.to_string()).map_err(err)
    }

    /// Rational roots with multiplicity.
    fn roots(&self) -> PyResult<Vec<String>> {
        let split = self.0.rational_roots().map_err(err)?;
        Ok(split.roots.iter().map(|r| r.to_string()).collect())
    }

    fn shift(&self, k: Vec<i64>) -> PyResult<Self> {
        self.0.shift(&k).map(PyPoly).map_err(err)
    }

    fn exact_divide(&self, other: &Self) -> PyResult<Self> {
        self.0.exact_divide(&other.0).map(PyPoly).map_err(err)
    }
}

/// Element of the skew Laurent ring `D[x^{±1}; σ]`.
#[pyclass(name = "LaurentOp", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyLaurentOp(LaurentOp);

#[pymethods]
impl PyLaurentOp {
    /// Parses `text` with generators of `D(A(m))`; `m` is a comma list.
    #[staticmethod]
    #[pyo3(signature = (text, m = "1"))]
    fn parse(text: &str, m: &str) -> PyResult<Self> {
        LaurentContext::new(shape(m)?, Algebra::DA)
            .parse(text)
            .map(PyLaurentOp)
            .map_err(err)
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.0.nvars()
    }

    fn __str__(&self) -> String {
        self.0.render()
    }

    fn __repr__(&self) -> String {
        format!("LaurentOp('{}')", self.0.render())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.checked_add(&other.0).map(PyLaurentOp).map_err(err)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.0.checked_sub(&other.0).map(PyLaurentOp).map_err(err)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.checked_mul(&other.0).map(PyLaurentOp).map_err(err)
    }

    fn __neg__(&self) -> Self {
        PyLaurentOp(-&self.0)
    }

    fn __pow__(&self, e: u32, _modulo: Option<u32>) -> Self {
        PyLaurentOp(self.0.pow(e))
    }

    fn is_member(&self, m: &str) -> PyResult<bool> {
        Ok(cuspops::membership(&self.0, &shape(m)?))
    }

    /// `[(degree, coefficient), ...]` with `u = Σ c_α δ_α`.
    fn decompose(&self, m: &str) -> PyResult<Vec<(Vec<i64>, String)>> {
        let parts = cuspops::decompose_op(&self.0, &shape(m)?).map_err(err)?;
        Ok(parts.into_iter().map(|(d, c)| (d.0, c.to_string())).collect())
    }

    /// Action on a Laurent polynomial with constant coefficients.
    fn act(&self, vector: &str) -> PyResult<String> {
        let n = self.0.nvars();
        let ctx = LaurentContext::new(CuspShape::new(vec![1; n]).map_err(err)?, Algebra::DA);
        let v = LaurentVector::from_op(&ctx.parse(vector).map_err(err)?).map_err(err)?;
        act(&self.0, &v).map(|r| r.render()).map_err(err)
    }

    fn to_json(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let v = serde_json::to_value(self.0.to_json()).map_err(|e| PyValueError::new_err(e.to_string()))?;
        from_json(py, &v)
    }
}

/// Element of a generalized Weyl algebra (`bbA`, `calA` or `weyl`).
#[pyclass(name = "GwaElement", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGwa {
    el: GwaElement,
    algebra: Algebra,
    m: String,
}

impl PyGwa {
    fn wrap(&self, el: GwaElement) -> Self {
        PyGwa {
            el,
            algebra: self.algebra,
            m: self.m.clone(),
        }
    }
}

#[pymethods]
impl PyGwa {
    #[staticmethod]
    #[pyo3(signature = (text, algebra_name, m = "2"))]
    fn parse(text: &str, algebra_name: &str, m: &str) -> PyResult<Self> {
        let a = algebra(algebra_name)?;
        let pres = Arc::new(a.presentation(&shape(m)?).map_err(err)?);
        let el = cli::parse_gwa(text, &pres).map_err(err)?;
        Ok(PyGwa {
            el,
            algebra: a,
            m: m.to_string(),
        })
    }

    fn __str__(&self) -> String {
        self.el.render()
    }

    fn __repr__(&self) -> String {
        format!("GwaElement('{}', '{}')", self.el.render(), self.algebra.name())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.el == other.el
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.el.checked_add(&other.el).map(|e| self.wrap(e)).map_err(err)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.el.checked_mul(&other.el).map(|e| self.wrap(e)).map_err(err)
    }

    /// Image in the skew Laurent ring.
    fn embed(&self) -> PyResult<PyLaurentOp> {
        let s = shape(&self.m)?;
        let emb = match self.algebra {
            Algebra::Weyl => Embedding::weyl(s.rank()),
            Algebra::CalA => Embedding::cal_a(s.rank_one().map_err(err)?),
            Algebra::BbA => Embedding::bb_a(s.rank_one().map_err(err)?),
            Algebra::DA => return Err(PyValueError::new_err("DA has no GWA presentation")),
        };
        emb.apply(&self.el).map(PyLaurentOp).map_err(err)
    }

    fn is_normal(&self) -> PyResult<bool> {
        classify::is_normal(&self.el).map_err(err)
    }
}

#[pyfunction]
fn phi(m: u32, i: i64) -> PyPoly {
    PyPoly(cuspops::phi(m, i))
}

#[pyfunction]
#[pyo3(signature = (m, i, at = 1))]
fn delta(m: &str, i: i64, at: usize) -> PyResult<PyLaurentOp> {
    let s = shape(m)?;
    if at == 0 || at > s.rank() {
        return Err(PyValueError::new_err(format!("no factor {at}")));
    }
    cuspops::delta_at(&s, at - 1, i)
        .map(|d| PyLaurentOp(d.into_op()))
        .map_err(err)
}

/// `(case, coefficient)` with `δ_i δ_j = c · word`.
#[pyfunction]
fn structure_constant(m: u32, i: i64, j: i64) -> PyResult<(String, String)> {
    let sc = cuspops::structure_constant(m, i, j).map_err(err)?;
    Ok((sc.case.tag().to_string(), sc.coeff.to_string()))
}

#[pyfunction]
fn relations_check(py: Python<'_>, m: &str) -> PyResult<Py<PyAny>> {
    let r = cli::relations_report(&shape(m)?, None).map_err(err)?;
    let v = serde_json::to_value(&r).map_err(|e| PyValueError::new_err(e.to_string()))?;
    from_json(py, &v)
}

#[pyfunction]
#[pyo3(signature = (m, window = 6))]
fn classify_bba(py: Python<'_>, m: u32, window: usize) -> PyResult<Py<PyAny>> {
    from_json(py, &classify::classify_bba(m, window).map_err(err)?.to_json())
}

/// `(s, alpha, beta, b_norm)` for an element of `bbA`.
#[pyfunction]
fn normalize(m: u32, element: &str) -> PyResult<(u64, String, String, String)> {
    let pres = Arc::new(GwaPresentation::bb_a(m));
    let b = cli::parse_gwa(element, &pres).map_err(err)?;
    let n = classify::normalize(&b).map_err(err)?;
    Ok((n.s, n.alpha.to_string(), n.beta.to_string(), n.b_norm.render()))
}

/// Runs the command-line front end; returns `(exit, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut e = Vec::new();
    let mut full = vec!["cuspdiff".to_string()];
    full.extend(args);
    let code = cli::run(full, &mut out, &mut e);
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&e).into_owned(),
    )
}

#[pymodule]
fn cuspdiff_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyLaurentOp>()?;
    m.add_class::<PyGwa>()?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(delta, m)?)?;
    m.add_function(wrap_pyfunction!(structure_constant, m)?)?;
    m.add_function(wrap_pyfunction!(relations_check, m)?)?;
    m.add_function(wrap_pyfunction!(classify_bba, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}

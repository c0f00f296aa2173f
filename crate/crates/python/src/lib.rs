//! Python bindings.
//!
//! Rationals cross the boundary as `fractions.Fraction`, integers as Python
//! ints of any size. Gram entries may be given as ints, `Fraction`s, or
//! `"p/q"` strings.

use num_bigint::BigInt;
use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use cubic_shadow::exact::{parse_rational, Matrix, Rational};
use cubic_shadow::lift::{self, Family, LiftMode};
use cubic_shadow::projection::{self, AxisVector, GramMatrix};
use cubic_shadow::{catalog, reduction, strut, Error, ZMatrix};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::AmbiguousFloor { .. } => PyArithmeticError::new_err(e.to_string()),
        Error::EnumerationRefused { .. } | Error::SearchRefused { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((q.numer().clone(), q.denom().clone()))
}

fn rational_from_py(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let text = obj.str()?;
    parse_rational(&text.to_cow()?).map_err(to_py_err)
}

fn zmatrix_rows(m: &ZMatrix) -> Vec<Vec<BigInt>> {
    m.to_rows()
}

#[pyclass(name = "GramMatrix", module = "cubic_shadow_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGram(GramMatrix);

#[pymethods]
impl PyGram {
    #[new]
    fn new(entries: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let rows = entries
            .iter()
            .map(|r| r.iter().map(rational_from_py).collect::<PyResult<Vec<_>>>())
            .collect::<PyResult<Vec<_>>>()?;
        let m = Matrix::from_rows(rows).map_err(to_py_err)?;
        GramMatrix::new(m).map(PyGram).map_err(to_py_err)
    }

    /// Built-in lattice by name, e.g. `"E8"`, `"D4"`, `"Z3"`.
    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        catalog::lookup(name).map(|e| PyGram(e.gram)).map_err(to_py_err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn det<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.det())
    }

    fn entries<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let rows = PyList::empty(py);
        for r in self.0.matrix().to_rows() {
            let row = PyList::empty(py);
            for x in &r {
                row.append(fraction(py, x)?)?;
            }
            rows.append(row)?;
        }
        Ok(rows)
    }

    fn inverse(&self) -> Self {
        PyGram(self.0.inverse())
    }

    fn __repr__(&self) -> String {
        format!("GramMatrix({})", self.0.matrix())
    }
}

#[pyclass(name = "AxisVector", module = "cubic_shadow_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyAxis(AxisVector);

#[pymethods]
impl PyAxis {
    /// Full coordinates; the first must be 1.
    #[new]
    fn new(entries: Vec<BigInt>) -> PyResult<Self> {
        AxisVector::from_entries(entries).map(PyAxis).map_err(to_py_err)
    }

    #[getter]
    fn entries(&self) -> Vec<BigInt> {
        self.0.entries().to_vec()
    }

    fn norm_sq(&self) -> BigInt {
        self.0.norm_sq()
    }

    fn primal_gram(&self) -> PyGram {
        PyGram(projection::primal_gram(&self.0))
    }

    fn dual_gram(&self) -> PyGram {
        PyGram(projection::dual_gram(&self.0))
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }

    fn __repr__(&self) -> String {
        format!("AxisVector{}", self.0)
    }
}

#[pyclass(name = "LiftResult", module = "cubic_shadow_py", frozen)]
struct PyLift(lift::LiftResult);

#[pymethods]
impl PyLift {
    #[getter]
    fn v(&self) -> PyAxis {
        PyAxis(self.0.v.clone())
    }

    #[getter]
    fn w(&self) -> BigInt {
        self.0.w.clone()
    }

    #[getter]
    fn lifted(&self) -> Vec<Vec<BigInt>> {
        zmatrix_rows(&self.0.lifted)
    }

    #[getter]
    fn dual_gram_lifted(&self) -> PyGram {
        PyGram(self.0.dual_gram_lifted.clone())
    }

    #[getter]
    fn scale<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.scale)
    }

    #[getter]
    fn residual<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.residual)
    }

    /// Residual, optionally re-fitted over reduced bases and nearby scales.
    #[pyo3(signature = (use_reduction = false))]
    fn convergence_residual<'py>(&self, py: Python<'py>, use_reduction: bool) -> PyResult<Bound<'py, PyAny>> {
        let r = reduction::convergence_residual(&self.0, use_reduction).map_err(to_py_err)?;
        fraction(py, &r)
    }

    fn __repr__(&self) -> String {
        format!("LiftResult(v={}, w={}, residual={})", self.0.v, self.0.w, self.0.residual)
    }
}

#[pyfunction]
#[pyo3(signature = (gram, w, mode = "dual"))]
fn construct_v(gram: &PyGram, w: BigInt, mode: &str) -> PyResult<PyLift> {
    let mode: LiftMode = mode.parse().map_err(to_py_err)?;
    lift::construct_v(&gram.0, &w, mode).map(PyLift).map_err(to_py_err)
}

/// Closed-form family member. `param` is `t` for `dm` and `fcc`, `w` otherwise.
#[pyfunction]
#[pyo3(signature = (name, param, m = None))]
fn family(name: &str, param: BigInt, m: Option<usize>) -> PyResult<PyAxis> {
    let f = Family::from_name(name, m, Some(param.clone()), Some(param)).map_err(to_py_err)?;
    f.vector().map(PyAxis).map_err(to_py_err)
}

/// `(λ₁², witness)` with the witness in the input basis.
#[pyfunction]
fn shortest_vector<'py>(py: Python<'py>, gram: &PyGram) -> PyResult<(Bound<'py, PyAny>, Vec<BigInt>)> {
    let r = reduction::shortest_vector(&gram.0).map_err(to_py_err)?;
    Ok((fraction(py, &r.min_norm)?, r.witness))
}

#[pyfunction]
fn center_density<'py>(py: Python<'py>, gram: &PyGram) -> PyResult<Bound<'py, PyDict>> {
    let r = reduction::center_density(&gram.0).map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("min_norm", fraction(py, &r.min_norm)?)?;
    d.set_item("det", fraction(py, &r.det)?)?;
    d.set_item("center_density", r.center_density)?;
    d.set_item("packing_density", r.packing_density)?;
    Ok(d)
}

#[pyfunction]
fn lll_reduce(gram: &PyGram) -> PyResult<(PyGram, Vec<Vec<BigInt>>)> {
    let r = reduction::lll_reduce(&gram.0).map_err(to_py_err)?;
    Ok((PyGram(r.gram), zmatrix_rows(&r.transform)))
}

#[pyfunction]
fn lagrange_reduce_2d(gram: &PyGram) -> PyResult<(PyGram, Vec<Vec<BigInt>>)> {
    let r = reduction::lagrange_reduce_2d(&gram.0).map_err(to_py_err)?;
    Ok((PyGram(r.gram), zmatrix_rows(&r.transform)))
}

type ScaledTransform<'py> = (Bound<'py, PyAny>, Vec<Vec<BigInt>>);

/// `(λ, T)` with `a = λ·T·b·Tᵀ`, or `None`.
#[pyfunction]
fn similarity_2d<'py>(
    py: Python<'py>,
    a: &PyGram,
    b: &PyGram,
) -> PyResult<Option<ScaledTransform<'py>>> {
    match reduction::similarity_2d(&a.0, &b.0).map_err(to_py_err)? {
        Some(s) => Ok(Some((fraction(py, &s.scale)?, zmatrix_rows(&s.transform)))),
        None => Ok(None),
    }
}

#[pyfunction]
#[pyo3(signature = (bound, target = None))]
fn prop1_search<'py>(py: Python<'py>, bound: u64, target: Option<&PyGram>) -> PyResult<Bound<'py, PyDict>> {
    let t = match target {
        Some(g) => g.0.clone(),
        None => catalog::lookup("2Z+Z").map_err(to_py_err)?.gram,
    };
    let r = reduction::prop1_search(bound, &t).map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("bound", r.bound)?;
    d.set_item("checked", r.checked)?;
    d.set_item("counterexamples", r.counterexamples)?;
    Ok(d)
}

#[pyfunction]
fn strut_radius<'py>(py: Python<'py>, v: &PyAxis) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &strut::strut_radius(&v.0).map_err(to_py_err)?)
}

#[pyfunction]
#[pyo3(signature = (n, m_min, m_max, top_k, workers = 1))]
fn strut_search<'py>(
    py: Python<'py>,
    n: usize,
    m_min: BigInt,
    m_max: BigInt,
    top_k: usize,
    workers: usize,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let reports = strut::strut_search(n, &m_min, &m_max, top_k, workers).map_err(to_py_err)?;
    reports
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("v", r.v.entries().to_vec())?;
            d.set_item("M", r.m.clone())?;
            d.set_item("min_norm_primal", fraction(py, &r.min_norm_primal)?)?;
            d.set_item("radius", r.radius)?;
            d.set_item("center_density", r.center_density)?;
            d.set_item("volume_proxy", r.volume_proxy)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn cubic_shadow_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGram>()?;
    m.add_class::<PyAxis>()?;
    m.add_class::<PyLift>()?;
    m.add_function(wrap_pyfunction!(construct_v, m)?)?;
    m.add_function(wrap_pyfunction!(family, m)?)?;
    m.add_function(wrap_pyfunction!(shortest_vector, m)?)?;
    m.add_function(wrap_pyfunction!(center_density, m)?)?;
    m.add_function(wrap_pyfunction!(lll_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(lagrange_reduce_2d, m)?)?;
    m.add_function(wrap_pyfunction!(similarity_2d, m)?)?;
    m.add_function(wrap_pyfunction!(prop1_search, m)?)?;
    m.add_function(wrap_pyfunction!(strut_radius, m)?)?;
    m.add_function(wrap_pyfunction!(strut_search, m)?)?;
    m.add("CATALOG_NAMES", catalog::NAMES.to_vec())?;
    Ok(())
}

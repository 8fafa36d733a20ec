//! Python bindings for the core types and the checking pipeline.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use holoconvex_core::pipeline::{self, RunOptions};
use holoconvex_core::problem::ProblemFile;
use holoconvex_core::selftest;
use holoconvex_core::series::{MultiIndex, TruncatedSeries};
use holoconvex_core::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Validation(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Truncated multivariate power series over the complex numbers.
#[pyclass(name = "Series")]
#[derive(Clone)]
struct PySeries {
    inner: TruncatedSeries,
}

#[pymethods]
impl PySeries {
    /// Build from a list of `(exponents, coefficient)` terms.
    #[new]
    fn new(nvars: usize, order: usize, terms: Vec<(Vec<u32>, Complex64)>) -> PyResult<Self> {
        for (e, _) in &terms {
            if e.len() != nvars {
                return Err(PyValueError::new_err(format!(
                    "exponent list must have {nvars} entries"
                )));
            }
        }
        Ok(PySeries {
            inner: TruncatedSeries::from_terms(
                nvars,
                order,
                terms.into_iter().map(|(e, c)| (MultiIndex(e), c)),
            ),
        })
    }

    #[staticmethod]
    fn constant(nvars: usize, order: usize, value: Complex64) -> Self {
        PySeries {
            inner: TruncatedSeries::constant(nvars, order, value),
        }
    }

    #[staticmethod]
    fn variable(nvars: usize, order: usize, var: usize) -> PyResult<Self> {
        if var >= nvars {
            return Err(PyValueError::new_err("variable index out of range"));
        }
        Ok(PySeries {
            inner: TruncatedSeries::variable(nvars, order, var),
        })
    }

    fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    /// Terms as `(exponents, coefficient)` pairs in graded-lexicographic order.
    fn terms(&self) -> Vec<(Vec<u32>, Complex64)> {
        self.inner
            .terms()
            .map(|(idx, c)| (idx.0.clone(), *c))
            .collect()
    }

    fn coeff(&self, exponents: Vec<u32>) -> PyResult<Complex64> {
        if exponents.len() != self.inner.nvars() {
            return Err(PyValueError::new_err("exponent list length mismatch"));
        }
        Ok(self.inner.coeff(&MultiIndex(exponents)))
    }

    fn add(&self, other: &PySeries) -> PyResult<Self> {
        self.check_compatible(other)?;
        Ok(PySeries {
            inner: self.inner.add(&other.inner),
        })
    }

    fn sub(&self, other: &PySeries) -> PyResult<Self> {
        self.check_compatible(other)?;
        Ok(PySeries {
            inner: self.inner.sub(&other.inner),
        })
    }

    fn mul(&self, other: &PySeries) -> PyResult<Self> {
        self.check_compatible(other)?;
        Ok(PySeries {
            inner: self.inner.mul(&other.inner),
        })
    }

    fn scale(&self, factor: Complex64) -> Self {
        PySeries {
            inner: self.inner.scale(factor),
        }
    }

    fn derive(&self, var: usize) -> PyResult<Self> {
        if var >= self.inner.nvars() {
            return Err(PyValueError::new_err("variable index out of range"));
        }
        Ok(PySeries {
            inner: self.inner.derive(var),
        })
    }

    fn reciprocal(&self) -> PyResult<Self> {
        Ok(PySeries {
            inner: self.inner.reciprocal().map_err(py_err)?,
        })
    }

    fn compose(&self, inner: Vec<PySeries>) -> PyResult<Self> {
        let series: Vec<TruncatedSeries> = inner.into_iter().map(|s| s.inner).collect();
        if series.len() != self.inner.nvars() {
            return Err(PyValueError::new_err("inner count must equal nvars"));
        }
        Ok(PySeries {
            inner: self.inner.compose(&series).map_err(py_err)?,
        })
    }

    fn eval(&self, point: Vec<Complex64>) -> PyResult<Complex64> {
        if point.len() != self.inner.nvars() {
            return Err(PyValueError::new_err("point length mismatch"));
        }
        Ok(self.inner.eval(&point))
    }

    fn __add__(&self, other: &PySeries) -> PyResult<Self> {
        self.add(other)
    }

    fn __sub__(&self, other: &PySeries) -> PyResult<Self> {
        self.sub(other)
    }

    fn __mul__(&self, other: &PySeries) -> PyResult<Self> {
        self.mul(other)
    }

    fn __repr__(&self) -> String {
        format!("Series({})", self.inner)
    }
}

impl PySeries {
    fn check_compatible(&self, other: &PySeries) -> PyResult<()> {
        if self.inner.nvars() != other.inner.nvars() {
            return Err(PyValueError::new_err("variable-count mismatch"));
        }
        Ok(())
    }
}

/// Run the full pipeline on a JSON problem and return the JSON report.
#[pyfunction]
#[pyo3(signature = (problem_json, original_coords = false, samples = None))]
fn check(problem_json: &str, original_coords: bool, samples: Option<usize>) -> PyResult<String> {
    let problem = ProblemFile::from_json(problem_json)
        .and_then(|p| p.validate())
        .map_err(py_err)?;
    let report = pipeline::run_check(
        &problem,
        &RunOptions {
            original_coords,
            samples,
        },
    )
    .map_err(py_err)?;
    Ok(report.to_json())
}

/// Classification string only ("pos-holds", "non-characteristic", ...).
#[pyfunction]
fn classify(problem_json: &str) -> PyResult<String> {
    let problem = ProblemFile::from_json(problem_json)
        .and_then(|p| p.validate())
        .map_err(py_err)?;
    let report = pipeline::run_check(&problem, &RunOptions::default()).map_err(py_err)?;
    Ok(report.classification.as_str().to_string())
}

/// Human summary of a check, as printed by the command line.
#[pyfunction]
fn summarize(problem_json: &str) -> PyResult<String> {
    let problem = ProblemFile::from_json(problem_json)
        .and_then(|p| p.validate())
        .map_err(py_err)?;
    let report = pipeline::run_check(&problem, &RunOptions::default()).map_err(py_err)?;
    Ok(pipeline::human_summary(&report))
}

/// Run the bundled invariant suites; raises RuntimeError when any fails.
#[pyfunction]
#[pyo3(signature = (order = 8))]
fn run_selftest(order: usize) -> PyResult<String> {
    let results = selftest::run_selftest(order, None);
    let table = selftest::render_table(&results);
    if results.iter().all(|r| r.passed) {
        Ok(table)
    } else {
        Err(PyRuntimeError::new_err(table))
    }
}

#[pymodule]
fn holoconvex_py(_py: Python<'_>, m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySeries>()?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(summarize, m)?)?;
    m.add_function(wrap_pyfunction!(run_selftest, m)?)?;
    Ok(())
}

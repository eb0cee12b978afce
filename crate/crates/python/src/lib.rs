//! Python bindings. Rationals cross the boundary as strings (`"3/7"`,
//! `"0.25"`, `"1e-9"`) so no precision is lost on the way in or out.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ratexp::euler::compound_value;
use ratexp::inequalities::amgm as amgm_pair;
use ratexp::{PosRational, Precision, Rational};

fn value_error(e: ratexp::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(s: &str) -> PyResult<Rational> {
    s.parse().map_err(value_error)
}

fn positive(s: &str) -> PyResult<PosRational> {
    s.parse().map_err(value_error)
}

fn precision(eps: &str) -> PyResult<Precision> {
    Precision::new(rational(eps)?).map_err(value_error)
}

/// Closed interval with exact rational endpoints.
#[pyclass(name = "Interval", module = "ratexp_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyInterval(ratexp::Interval);

#[pymethods]
impl PyInterval {
    #[new]
    fn new(lo: &str, hi: &str) -> PyResult<Self> {
        ratexp::Interval::new(rational(lo)?, rational(hi)?).map(PyInterval).map_err(value_error)
    }

    #[getter]
    fn lo(&self) -> String {
        self.0.lo().to_string()
    }

    #[getter]
    fn hi(&self) -> String {
        self.0.hi().to_string()
    }

    fn width(&self) -> String {
        self.0.width().to_string()
    }

    fn is_point(&self) -> bool {
        self.0.is_point()
    }

    fn contains(&self, x: &str) -> PyResult<bool> {
        Ok(self.0.contains(&rational(x)?))
    }

    fn intersects(&self, other: &PyInterval) -> bool {
        self.0.intersects(&other.0)
    }

    /// Decimal endpoints rounded outward to `digits` places.
    #[pyo3(signature = (digits = 10))]
    fn decimal(&self, digits: u32) -> (String, String) {
        ratexp::to_decimal(&self.0, digits)
    }

    fn __repr__(&self) -> String {
        format!("Interval('{}', '{}')", self.0.lo(), self.0.hi())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// Enclosure of `a^q`.
#[pyfunction]
#[pyo3(signature = (a, q, eps = "1e-10"))]
fn pow_rat(a: &str, q: &str, eps: &str) -> PyResult<PyInterval> {
    Ok(PyInterval(ratexp::pow_rat(&positive(a)?, &rational(q)?, &precision(eps)?)))
}

/// Enclosure of the nonnegative `n`-th root of `x`.
#[pyfunction]
#[pyo3(signature = (x, n, eps = "1e-10"))]
fn nth_root(x: &str, n: u32, eps: &str) -> PyResult<PyInterval> {
    ratexp::nth_root(&rational(x)?, n, &precision(eps)?).map(PyInterval).map_err(value_error)
}

/// Natural logarithm from difference-quotient brackets.
#[pyfunction]
#[pyo3(signature = (x, eps = "1e-10"))]
fn ln(x: &str, eps: &str) -> PyResult<PyInterval> {
    ratexp::ln_enclosure(&positive(x)?, &precision(eps)?).map(|l| PyInterval(l.bracket)).map_err(value_error)
}

/// `log_base(x)` for a rational base other than 1.
#[pyfunction]
#[pyo3(signature = (base, x, eps = "1e-10"))]
fn log(base: &str, x: &str, eps: &str) -> PyResult<PyInterval> {
    let base = ratexp::Interval::point(rational(base)?);
    ratexp::log_enclosure(&base, &positive(x)?, &precision(eps)?).map(PyInterval).map_err(value_error)
}

/// Enclosure of `e`, the base whose logarithm is one.
#[pyfunction]
#[pyo3(signature = (eps = "1e-10"))]
fn e(eps: &str) -> PyResult<PyInterval> {
    ratexp::compute_e(&precision(eps)?).map(|r| PyInterval(r.bracket)).map_err(value_error)
}

/// `e^x` from the Taylor series with a certified remainder.
#[pyfunction]
#[pyo3(signature = (x, eps = "1e-10"))]
fn exp_series(x: &str, eps: &str) -> PyResult<PyInterval> {
    Ok(PyInterval(ratexp::exp_series(&rational(x)?, &precision(eps)?)))
}

/// `e^x` as a power of the `e` enclosure.
#[pyfunction]
#[pyo3(signature = (x, eps = "1e-10"))]
fn exp_pow(x: &str, eps: &str) -> PyResult<PyInterval> {
    ratexp::exp_pow(&rational(x)?, &precision(eps)?).map(PyInterval).map_err(value_error)
}

/// `ln x` as the integral of `1/t` from 1 to `x`.
#[pyfunction]
#[pyo3(signature = (x, eps = "1e-10"))]
fn ln_integral(x: &str, eps: &str) -> PyResult<PyInterval> {
    ratexp::ln_integral(&positive(x)?, &precision(eps)?).map(PyInterval).map_err(value_error)
}

/// Exact `(1 + x/n)^n` as a `p/q` string.
#[pyfunction]
fn compound(x: &str, n: u64) -> PyResult<String> {
    compound_value(&rational(x)?, n).map(|v| v.to_string()).map_err(value_error)
}

/// Geometric mean enclosure, exact arithmetic mean and the verdict for
/// `GM <= AM`.
#[pyfunction]
#[pyo3(signature = (values, eps = "1e-10"))]
fn amgm(values: Vec<String>, eps: &str) -> PyResult<(PyInterval, String, String)> {
    let values = values.iter().map(|v| rational(v)).collect::<PyResult<Vec<_>>>()?;
    let pair = amgm_pair(&values, &precision(eps)?).map_err(value_error)?;
    let verdict = pair.verdict().as_str().to_string();
    Ok((PyInterval(pair.geometric), pair.arithmetic.to_string(), verdict))
}

#[pymodule]
fn ratexp_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInterval>()?;
    m.add_function(wrap_pyfunction!(pow_rat, m)?)?;
    m.add_function(wrap_pyfunction!(nth_root, m)?)?;
    m.add_function(wrap_pyfunction!(ln, m)?)?;
    m.add_function(wrap_pyfunction!(log, m)?)?;
    m.add_function(wrap_pyfunction!(e, m)?)?;
    m.add_function(wrap_pyfunction!(exp_series, m)?)?;
    m.add_function(wrap_pyfunction!(exp_pow, m)?)?;
    m.add_function(wrap_pyfunction!(ln_integral, m)?)?;
    m.add_function(wrap_pyfunction!(compound, m)?)?;
    m.add_function(wrap_pyfunction!(amgm, m)?)?;
    Ok(())
}

//! Python bindings: algebras, modules and the report-producing checks.

use gradedk_cli::session::Value;
use gradedk_cli::{parse, CliError, Options, Session};
use gradedk_core::algebra::GradedAlgebra;
use gradedk_core::error::Error;
use gradedk_core::field::Field;
use gradedk_core::filtration::{filtration_report, nakayama_report, swan_report};
use gradedk_core::gmod::{graded_iso, summands, ProjectivePresentation};
use gradedk_core::grading::{Degree, GradingGroup};
use gradedk_core::ktheory::{
    corollary_check, dade_check, k0, k0_report, lemma_check, quillen_case, theorem1_check, Report,
};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn core_err(e: Error) -> PyErr {
    match e {
        Error::Invariant(_) | Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn cli_err(e: CliError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, r: &Report) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(r).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn degree(g: &GradingGroup, flat: Vec<i64>) -> PyResult<Degree> {
    g.degree_from_flat(&flat).map_err(core_err)
}

fn field(s: &str) -> PyResult<Field> {
    Field::parse(s).map_err(core_err)
}

fn group(s: &str) -> PyResult<GradingGroup> {
    s.parse().map_err(core_err)
}

/// A graded algebra.
#[pyclass(name = "Algebra", module = "gradedk", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAlgebra(GradedAlgebra);

/// A finitely generated graded projective module.
#[pyclass(name = "Module", module = "gradedk", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGradedModule(ProjectivePresentation);

#[pymethods]
impl PyAlgebra {
    /// `M_n(F)` with the given shifts; `group` defaults to `Z`.
    #[staticmethod]
    #[pyo3(signature = (field_name, shifts, group_name = "Z"))]
    fn matrix(field_name: &str, shifts: Vec<Vec<i64>>, group_name: &str) -> PyResult<PyAlgebra> {
        let g = group(group_name)?;
        let shifts = shifts.into_iter().map(|s| degree(&g, s)).collect::<PyResult<_>>()?;
        GradedAlgebra::matrix(field(field_name)?, g, shifts).map(PyAlgebra).map_err(core_err)
    }

    #[staticmethod]
    fn field(field_name: &str) -> PyResult<PyAlgebra> {
        Ok(PyAlgebra(GradedAlgebra::base_field(field(field_name)?)))
    }

    #[staticmethod]
    fn group_algebra(field_name: &str, group_name: &str) -> PyResult<PyAlgebra> {
        Ok(PyAlgebra(GradedAlgebra::group_algebra(field(field_name)?, group(group_name)?)))
    }

    /// Evaluate an algebra expression of the script language.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<PyAlgebra> {
        match eval(text)? {
            Value::Algebra(a) => Ok(PyAlgebra(a)),
            Value::Field(f) => Ok(PyAlgebra(GradedAlgebra::base_field(f))),
            _ => Err(PyValueError::new_err(format!("`{text}` is not an algebra"))),
        }
    }

    fn poly(&self, deg: Vec<i64>) -> PyResult<PyAlgebra> {
        GradedAlgebra::poly(&self.0, &deg).map(PyAlgebra).map_err(core_err)
    }

    fn tensor(&self, other: &PyAlgebra) -> PyResult<PyAlgebra> {
        GradedAlgebra::tensor(&self.0, &other.0).map(PyAlgebra).map_err(core_err)
    }

    fn product(&self, other: &PyAlgebra) -> PyResult<PyAlgebra> {
        GradedAlgebra::product(&self.0, &other.0).map(PyAlgebra).map_err(core_err)
    }

    fn zero_part(&self) -> PyResult<PyAlgebra> {
        self.0.zero_part().map(PyAlgebra).map_err(core_err)
    }

    fn forget(&self) -> PyResult<PyAlgebra> {
        self.0.forget_grading().map(PyAlgebra).map_err(core_err)
    }

    fn extend(&self, group_name: &str) -> PyResult<PyAlgebra> {
        self.0.extend_trivially(&group(group_name)?).map(PyAlgebra).map_err(core_err)
    }

    #[getter]
    fn group(&self) -> String {
        self.0.group().to_string()
    }

    fn component_dim(&self, deg: Vec<i64>) -> PyResult<usize> {
        Ok(self.0.component_dim(&degree(self.0.group(), deg)?))
    }

    fn is_strongly_graded(&self) -> bool {
        self.0.is_strongly_graded()
    }

    /// `(description, free rank or None, number of orbits)` of graded `K_0`.
    #[pyo3(signature = (seed = 0))]
    fn k0(&self, seed: u64) -> PyResult<(String, Option<usize>, usize)> {
        let k = k0(&self.0, seed).map_err(core_err)?;
        Ok((k.describe(), k.module.free_rank(), k.module.num_orbits()))
    }

    fn regular(&self) -> PyGradedModule {
        PyGradedModule(ProjectivePresentation::regular(&self.0))
    }

    fn free(&self, shifts: Vec<Vec<i64>>) -> PyResult<PyGradedModule> {
        let g = self.0.group();
        let shifts = shifts.into_iter().map(|s| degree(g, s)).collect::<PyResult<_>>()?;
        Ok(PyGradedModule(ProjectivePresentation::free(&self.0, shifts)))
    }

    fn __repr__(&self) -> String {
        self.0.to_string()
    }
}

#[pymethods]
impl PyGradedModule {
    /// Evaluate a module expression of the script language.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<PyGradedModule> {
        match eval(text)? {
            Value::Module(p) => Ok(PyGradedModule(p)),
            _ => Err(PyValueError::new_err(format!("`{text}` is not a module"))),
        }
    }

    fn shift(&self, deg: Vec<i64>) -> PyResult<PyGradedModule> {
        Ok(PyGradedModule(self.0.shift(&degree(self.0.algebra().group(), deg)?)))
    }

    fn direct_sum(&self, other: &PyGradedModule) -> PyResult<PyGradedModule> {
        self.0.direct_sum(&other.0).map(PyGradedModule).map_err(core_err)
    }

    fn component_dim(&self, deg: Vec<i64>) -> PyResult<usize> {
        Ok(self.0.component_dim(&degree(self.0.algebra().group(), deg)?))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    #[getter]
    fn algebra(&self) -> PyAlgebra {
        PyAlgebra(self.0.algebra().clone())
    }

    #[pyo3(signature = (seed = 0))]
    fn num_summands(&self, seed: u64) -> PyResult<usize> {
        summands(&self.0, seed).map(|s| s.len()).map_err(core_err)
    }

    #[pyo3(signature = (other, seed = 0))]
    fn is_isomorphic(&self, other: &PyGradedModule, seed: u64) -> PyResult<bool> {
        graded_iso(&self.0, &other.0, seed).map_err(core_err)
    }

    fn __repr__(&self) -> String {
        let shifts: Vec<String> = self.0.shifts().iter().map(|d| d.to_string()).collect();
        format!("Module({}, shifts=[{}])", self.0.algebra(), shifts.join(", "))
    }
}

fn eval(text: &str) -> PyResult<Value> {
    let script = parse(&format!("_ = {text}")).map_err(cli_err)?;
    let mut session = Session::new(Options::default());
    session.declare_all(&script).map_err(cli_err)?;
    Ok(session.get("_").cloned().expect("declared above"))
}

#[pyfunction]
#[pyo3(signature = (algebra, seed = 0, degree_bound = None))]
fn k0_check(py: Python<'_>, algebra: &PyAlgebra, seed: u64, degree_bound: Option<i64>) -> PyResult<Py<PyAny>> {
    to_py(py, &k0_report(&algebra.0, seed, degree_bound).map_err(core_err)?)
}

#[pyfunction]
#[pyo3(signature = (algebra, seed = 0, degree_bound = None))]
fn dade(py: Python<'_>, algebra: &PyAlgebra, seed: u64, degree_bound: Option<i64>) -> PyResult<Py<PyAny>> {
    to_py(py, &dade_check(&algebra.0, seed, degree_bound).map_err(core_err)?)
}

#[pyfunction]
#[pyo3(signature = (algebra, seed = 0, degree_bound = None))]
fn quillen(py: Python<'_>, algebra: &PyAlgebra, seed: u64, degree_bound: Option<i64>) -> PyResult<Py<PyAny>> {
    to_py(py, &quillen_case(&algebra.0, seed, degree_bound).map_err(core_err)?)
}

#[pyfunction]
#[pyo3(signature = (algebra, seed = 0, degree_bound = None))]
fn theorem1(py: Python<'_>, algebra: &PyAlgebra, seed: u64, degree_bound: Option<i64>) -> PyResult<Py<PyAny>> {
    to_py(py, &theorem1_check(&algebra.0, seed, degree_bound).map_err(core_err)?)
}

#[pyfunction]
#[pyo3(signature = (algebra, m = None, seed = 0, degree_bound = None))]
fn corollary(
    py: Python<'_>,
    algebra: &PyAlgebra,
    m: Option<usize>,
    seed: u64,
    degree_bound: Option<i64>,
) -> PyResult<Py<PyAny>> {
    to_py(py, &corollary_check(&algebra.0, m, seed, degree_bound).map_err(core_err)?)
}

#[pyfunction]
#[pyo3(signature = (algebra, group_name, seed = 0, degree_bound = None))]
fn lemma(
    py: Python<'_>,
    algebra: &PyAlgebra,
    group_name: &str,
    seed: u64,
    degree_bound: Option<i64>,
) -> PyResult<Py<PyAny>> {
    to_py(py, &lemma_check(&algebra.0, &group(group_name)?, seed, degree_bound).map_err(core_err)?)
}

#[pyfunction]
#[pyo3(signature = (module, seed = 0, degree_bound = None))]
fn swan(py: Python<'_>, module: &PyGradedModule, seed: u64, degree_bound: Option<i64>) -> PyResult<Py<PyAny>> {
    to_py(py, &swan_report(&module.0, seed, degree_bound).map_err(core_err)?)
}

#[pyfunction]
#[pyo3(signature = (module, seed = 0, degree_bound = None))]
fn filtration(py: Python<'_>, module: &PyGradedModule, seed: u64, degree_bound: Option<i64>) -> PyResult<Py<PyAny>> {
    let k = k0(module.0.algebra(), seed).map_err(core_err)?;
    to_py(py, &filtration_report(&module.0, Some(&k), seed, degree_bound).map_err(core_err)?)
}

#[pyfunction]
#[pyo3(signature = (module, seed = 0, degree_bound = None))]
fn nakayama(py: Python<'_>, module: &PyGradedModule, seed: u64, degree_bound: Option<i64>) -> PyResult<Py<PyAny>> {
    to_py(py, &nakayama_report(&module.0, seed, degree_bound).map_err(core_err)?)
}

/// Run a script; returns the list of reports.
#[pyfunction]
#[pyo3(signature = (text, seed = 0, degree_bound = None, field_override = None))]
fn run(
    py: Python<'_>,
    text: &str,
    seed: u64,
    degree_bound: Option<i64>,
    field_override: Option<&str>,
) -> PyResult<Vec<Py<PyAny>>> {
    let script = parse(text).map_err(cli_err)?;
    let options = Options {
        seed,
        degree_bound,
        field: field_override.map(field).transpose()?,
    };
    let reports = Session::new(options).run(&script).map_err(|(_, e)| cli_err(e))?;
    reports.iter().map(|r| to_py(py, r)).collect()
}

/// Pretty-print a script in canonical form.
#[pyfunction]
fn format_script(text: &str) -> PyResult<String> {
    Ok(parse(text).map_err(cli_err)?.to_string())
}

#[pymodule]
fn gradedk(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyGradedModule>()?;
    m.add_function(wrap_pyfunction!(k0_check, m)?)?;
    m.add_function(wrap_pyfunction!(dade, m)?)?;
    m.add_function(wrap_pyfunction!(quillen, m)?)?;
    m.add_function(wrap_pyfunction!(theorem1, m)?)?;
    m.add_function(wrap_pyfunction!(corollary, m)?)?;
    m.add_function(wrap_pyfunction!(lemma, m)?)?;
    m.add_function(wrap_pyfunction!(swan, m)?)?;
    m.add_function(wrap_pyfunction!(filtration, m)?)?;
    m.add_function(wrap_pyfunction!(nakayama, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(format_script, m)?)?;
    Ok(())
}

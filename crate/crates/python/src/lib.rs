//! Python bindings for `threelie`.
//!
//! Scalars cross the boundary as `"p/q"` strings (integers are accepted on
//! input), matrices as lists of rows. Reports, cochains and cohomology groups
//! come back as plain dicts in the same shape as the CLI's JSON output.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;
use serde::Serialize;

use threelie::algebra::{adjoint_representation, ThreeLieAlgebra};
use threelie::cohomology::ETComplex;
use threelie::corpus;
use threelie::deformation::{DeformationSeries as Series, Extension};
use threelie::io::InputFile;
use threelie::{EmbeddingTensor as Tensor, Error, Matrix, Scalar};

fn err(e: Error) -> PyErr {
    match e {
        Error::Rejected { reason, report } => {
            let detail = serde_json::to_string(&report).unwrap_or_default();
            PyValueError::new_err(format!("rejected: {reason}: {detail}"))
        }
        other => PyValueError::new_err(other.to_string()),
    }
}

fn to_py<'py, T: Serialize>(py: Python<'py>, x: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(x).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn scalar(obj: &Bound<'_, PyAny>) -> PyResult<Scalar> {
    if let Ok(n) = obj.extract::<i64>() {
        return Ok(Scalar::from_int(n));
    }
    let text: String = obj.extract()?;
    text.parse().map_err(|_| PyValueError::new_err(format!("not a rational number: {text:?}")))
}

fn matrix(obj: &Bound<'_, PyAny>) -> PyResult<Matrix> {
    let mut rows = Vec::new();
    for row in obj.try_iter()? {
        let row = row?;
        let mut out = Vec::new();
        for x in row.try_iter()? {
            out.push(scalar(&x?)?);
        }
        rows.push(out);
    }
    Matrix::from_rows(rows).map_err(err)
}

fn matrix_out<'py>(py: Python<'py>, m: &Matrix) -> PyResult<Bound<'py, PyList>> {
    let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    PyList::new(py, rows)
}

/// A 3-Lie algebra given by its structure constants.
#[pyclass(name = "Algebra", module = "threelie_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAlgebra(ThreeLieAlgebra);

#[pymethods]
impl PyAlgebra {
    /// The 4-dimensional algebra `[e_i, e_j, e_k] = ε_ijkl e_l`.
    #[staticmethod]
    fn levi_civita4() -> Self {
        PyAlgebra(corpus::levi_civita4())
    }

    #[staticmethod]
    fn abelian(dim: usize) -> PyResult<Self> {
        ThreeLieAlgebra::abelian(dim).verify().map(PyAlgebra).map_err(err)
    }

    /// Reads `dim_g`, `basis_g` and `bracket` from an input file; the result
    /// is not verified.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        InputFile::parse(text).and_then(|f| f.algebra()).map(PyAlgebra).map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn is_verified(&self) -> bool {
        self.0.is_verified()
    }

    /// Fundamental identity report.
    fn check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.check_fundamental_identity())
    }

    fn verify(&self) -> PyResult<Self> {
        self.0.clone().verify().map(PyAlgebra).map_err(err)
    }

    fn to_json(&self) -> String {
        InputFile::from_algebra(&self.0).to_json()
    }

    fn __repr__(&self) -> String {
        format!("Algebra(dim={}, verified={})", self.0.dim(), self.0.is_verified())
    }
}

/// A linear map `T: V → g` together with `g` and its representation on `V`.
#[pyclass(name = "EmbeddingTensor", module = "threelie_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyTensor(Tensor);

#[pymethods]
impl PyTensor {
    /// `T: g → g` for the adjoint representation of a verified algebra.
    #[staticmethod]
    fn adjoint(g: &PyAlgebra, t: &Bound<'_, PyAny>) -> PyResult<Self> {
        let g = if g.0.is_verified() { g.0.clone() } else { g.0.clone().verify().map_err(err)? };
        let ad = adjoint_representation(&g).map_err(err)?;
        Tensor::new(g, ad, matrix(t)?).map(PyTensor).map_err(err)
    }

    /// Reads `g`, `rho` and `T` from an input file; the result is not verified.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let f = InputFile::parse(text).map_err(err)?;
        let g = f.algebra().and_then(|g| g.verify()).map_err(err)?;
        let rho = f.representation(&g).and_then(|r| r.verify(&g)).map_err(err)?;
        let t = f.tensor_map().map_err(err)?;
        Tensor::new(g, rho, t).map(PyTensor).map_err(err)
    }

    #[getter]
    fn dim_g(&self) -> usize {
        self.0.dim_g()
    }

    #[getter]
    fn dim_v(&self) -> usize {
        self.0.dim_v()
    }

    #[getter]
    fn t<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        matrix_out(py, self.0.t())
    }

    #[getter]
    fn is_verified(&self) -> bool {
        self.0.is_verified()
    }

    /// Report of `[Tu,Tv,Tw] = T(ρ(Tu,Tv)w)` on basis triples.
    fn check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.check())
    }

    /// Whether the graph of `T` is closed under the hemisemidirect bracket.
    fn graph_closure<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.graph_subalgebra_check().map_err(err)?)
    }

    fn strong_condition<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.check_strong_condition())
    }

    fn verify(&self) -> PyResult<Self> {
        self.0.clone().verify().map(PyTensor).map_err(err)
    }

    /// `dim Z^k`, `dim B^k`, `dim H^k` and representative cocycles.
    fn cohomology<'py>(&self, py: Python<'py>, k: usize) -> PyResult<Bound<'py, PyAny>> {
        let group = ETComplex::new(&self.0).and_then(|c| c.cohomology(k)).map_err(err)?;
        to_py(py, &group)
    }

    fn to_json(&self) -> String {
        InputFile::from_tensor(&self.0).to_json()
    }

    fn __repr__(&self) -> String {
        format!(
            "EmbeddingTensor(dim_g={}, dim_V={}, verified={})",
            self.0.dim_g(),
            self.0.dim_v(),
            self.0.is_verified()
        )
    }
}

/// A truncated formal deformation `T_t = T + t τ₁ + … + tⁿ τₙ`.
#[pyclass(name = "Deformation", module = "threelie_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDeformation(Series);

#[pymethods]
impl PyDeformation {
    /// `taus[0]` must equal `T`; the tensor must be verified.
    #[new]
    fn new(e: &PyTensor, taus: &Bound<'_, PyAny>) -> PyResult<Self> {
        let mut ms = Vec::new();
        for m in taus.try_iter()? {
            ms.push(matrix(&m?)?);
        }
        Series::new(&e.0, ms).map(PyDeformation).map_err(err)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn taus<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyList>>> {
        self.0.taus().iter().map(|m| matrix_out(py, m)).collect()
    }

    /// Report of the coefficient identities up to the series order.
    fn check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.check_order_n())
    }

    fn verify(&self) -> PyResult<Self> {
        self.0.clone().verify().map(PyDeformation).map_err(err)
    }

    /// The obstruction cochain to extending one order further.
    fn obstruction<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.obstruction().map_err(err)?)
    }

    /// `(tau_next, extended)` when the series extends, otherwise
    /// `(None, obstruction)`.
    fn extend<'py>(&self, py: Python<'py>) -> PyResult<(Option<Bound<'py, PyList>>, Bound<'py, PyAny>)> {
        match self.0.extend().map_err(err)? {
            Extension::Extended { tau_next, series } => {
                let next = matrix_out(py, &tau_next)?;
                Ok((Some(next), Bound::new(py, PyDeformation(series))?.into_any()))
            }
            Extension::Obstructed { obstruction } => Ok((None, to_py(py, &obstruction)?)),
        }
    }

    fn __repr__(&self) -> String {
        format!("Deformation(order={}, verified={})", self.0.order(), self.0.is_verified())
    }
}

/// Runs the command-line tool in-process and returns `(code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = threelie::cli::run_args(std::iter::once("threelie".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn threelie_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyTensor>()?;
    m.add_class::<PyDeformation>()?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}

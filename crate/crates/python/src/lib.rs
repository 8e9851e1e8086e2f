//! Python bindings: documents, simplicial sets, homotopy (co)limits and the
//! comparison checks.

use std::path::PathBuf;

use hocolim::barcobar::{hocolim, holim};
use hocolim::cli::{self, Witness};
use hocolim::simpset::{self, TruncSSet};
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

fn err(e: hocolim::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A truncated simplicial set.
#[pyclass(name = "SSet", module = "hocolim_py", frozen)]
#[derive(Clone)]
struct PySSet(TruncSSet);

#[pymethods]
impl PySSet {
    #[staticmethod]
    fn point(cap: usize) -> Self {
        PySSet(simpset::point(cap))
    }

    #[staticmethod]
    fn circle(cap: usize) -> Self {
        PySSet(simpset::circle(cap))
    }

    #[staticmethod]
    fn simplex(n: usize, cap: usize) -> Self {
        PySSet(simpset::standard_simplex(n, cap))
    }

    #[staticmethod]
    fn boundary(n: usize, cap: usize) -> Self {
        PySSet(simpset::boundary(n, cap))
    }

    #[staticmethod]
    fn horn(n: usize, k: usize, cap: usize) -> Self {
        PySSet(simpset::horn(n, k, cap))
    }

    #[getter]
    fn cap(&self) -> usize {
        self.0.cap()
    }

    fn level_sizes(&self) -> Vec<usize> {
        self.0.level_sizes()
    }

    fn nondegenerate_counts(&self) -> Vec<usize> {
        self.0.nondegenerate_counts()
    }

    fn labels(&self, n: usize) -> PyResult<Vec<String>> {
        if n > self.0.cap() {
            return Err(PyValueError::new_err(format!("level {n} is above the cap {}", self.0.cap())));
        }
        Ok(self.0.labels(n).to_vec())
    }

    fn face(&self, n: usize, i: usize, x: usize) -> PyResult<usize> {
        if n == 0 || n > self.0.cap() || i > n || x >= self.0.len(n) {
            return Err(PyValueError::new_err("face index out of range"));
        }
        Ok(self.0.face(n, i, x))
    }

    /// Homology groups in degrees `0..=max`, written like `Z^2` or `Z/2`.
    fn homology(&self, max: usize) -> PyResult<Vec<String>> {
        let gs = simpset::homology(&self.0, max).map_err(err)?;
        Ok(gs.iter().map(|g| g.to_string()).collect())
    }

    fn is_kan(&self, up_to: usize) -> PyResult<bool> {
        Ok(simpset::is_kan_up_to(&self.0, up_to).map_err(err)?.is_kan())
    }

    fn product(&self, other: &PySSet) -> PyResult<PySSet> {
        simpset::product(&self.0, &other.0).map(PySSet).map_err(err)
    }

    fn is_isomorphic(&self, other: &PySSet) -> bool {
        simpset::is_isomorphic(&self.0, &other.0).is_some()
    }

    fn __repr__(&self) -> String {
        format!("SSet(cap={}, nondegenerate={:?})", self.0.cap(), self.0.nondegenerate_counts())
    }
}

/// A loaded document at a uniform cap.
#[pyclass(name = "Workspace", module = "hocolim_py", frozen)]
struct PyWorkspace {
    ws: cli::Workspace,
    source: String,
}

impl PyWorkspace {
    fn diagram(&self, id: &str) -> PyResult<&hocolim::diagram::Diagram> {
        self.ws
            .diagrams
            .get(id)
            .map(|d| &d.item)
            .ok_or_else(|| PyKeyError::new_err(format!("no diagram `{id}`")))
    }
}

#[pymethods]
impl PyWorkspace {
    #[getter]
    fn cap(&self) -> usize {
        self.ws.cap
    }

    fn categories(&self) -> Vec<String> {
        self.ws.categories.keys().cloned().collect()
    }

    fn ssets(&self) -> Vec<String> {
        self.ws.ssets.keys().cloned().collect()
    }

    fn diagrams(&self) -> Vec<String> {
        self.ws.diagrams.keys().cloned().collect()
    }

    fn weights(&self) -> Vec<String> {
        self.ws.weights.keys().cloned().collect()
    }

    fn sset(&self, id: &str) -> PyResult<PySSet> {
        self.ws
            .ssets
            .get(id)
            .cloned()
            .map(PySSet)
            .ok_or_else(|| PyKeyError::new_err(format!("no sset `{id}`")))
    }

    /// Value of a diagram at the object called `object`.
    fn value(&self, diagram: &str, object: &str) -> PyResult<PySSet> {
        let d = self.diagram(diagram)?;
        let o = d.shape().object(object).map_err(err)?;
        Ok(PySSet(d.value(o).clone()))
    }

    fn hocolim(&self, diagram: &str) -> PyResult<PySSet> {
        hocolim(self.diagram(diagram)?).map(PySSet).map_err(err)
    }

    /// Homotopy limit truncated at `cap_out`; also reports whether the
    /// truncation was exact.
    fn holim(&self, diagram: &str, cap_out: usize) -> PyResult<(PySSet, bool)> {
        let t = holim(self.diagram(diagram)?, cap_out).map_err(err)?;
        Ok((PySSet(t.sset), t.exact))
    }

    /// Runs a named claim (or `all`); one `(claim, instance, passed, witness)`
    /// tuple per instance.
    fn verify(&self, claim: &str) -> PyResult<Vec<(String, String, bool, String)>> {
        let lines = cli::verify(claim, &self.ws, &self.source, Witness::Hwit).map_err(err)?;
        Ok(lines
            .into_iter()
            .map(|l| (l.claim, l.instance, l.pass, l.witness.to_string()))
            .collect())
    }

    fn to_toml(&self) -> PyResult<String> {
        self.ws.serialize().map_err(err)
    }
}

#[pyfunction]
#[pyo3(signature = (path, cap=None))]
fn load(path: PathBuf, cap: Option<usize>) -> PyResult<PyWorkspace> {
    let ws = cli::load(&path, cap).map_err(err)?;
    let source = path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    Ok(PyWorkspace { ws, source })
}

#[pyfunction]
#[pyo3(signature = (text, cap=None))]
fn loads(text: &str, cap: Option<usize>) -> PyResult<PyWorkspace> {
    let ws = cli::load_str(text, cap).map_err(err)?;
    Ok(PyWorkspace { ws, source: "doc".into() })
}

#[pyfunction]
fn claims() -> Vec<&'static str> {
    cli::CLAIMS.to_vec()
}

#[pymodule]
fn hocolim_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySSet>()?;
    m.add_class::<PyWorkspace>()?;
    m.add_function(wrap_pyfunction!(load, m)?)?;
    m.add_function(wrap_pyfunction!(loads, m)?)?;
    m.add_function(wrap_pyfunction!(claims, m)?)?;
    Ok(())
}

//! Python bindings: exact angles, cut specs and the invariants computed from them.
//!
//! Records come back as plain `dict`s with the same keys and value strings
//! the command-line reports use.

use contact_cuts::classify::overtwisted_disks;
use contact_cuts::report::{
    commute_records, homotopy_record, overtwisted_record, profile_record, witness_record, with_lens, DEFAULT_LENS_TABLE,
};
use contact_cuts::standard::{alpha_k_spec, lens_spec};
use contact_cuts::specfile::write_spec;
use contact_cuts::{
    cc_count, cc_profile, check_cut_symplectization_commute, classify_lens, count_lattice, detect_overtwisted,
    distinguish as distinguish_cuts, homotopy_certificate, parse_spec, reproduce_paper as reproduce, CutSpec,
    Direction, DistinguishMode, ParsedInput, Record,
};
use pyo3::basic::CompareOp;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn record_dict<'py>(py: Python<'py>, record: &Record) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item("kind", &record.kind)?;
    for (k, v) in &record.fields {
        dict.set_item(k, v)?;
    }
    Ok(dict)
}

fn direction(x: i64, y: i64) -> PyResult<Direction> {
    Direction::new(x, y).map_err(value_error)
}

/// `Arg(x, y) + 2π·turns` for a primitive integer vector, compared exactly.
#[pyclass(name = "Angle", frozen, skip_from_py_object, module = "contact_cuts_py")]
#[derive(Clone, Copy)]
struct PyAngle(contact_cuts::Angle);

#[pymethods]
impl PyAngle {
    #[new]
    #[pyo3(signature = (x, y, turns = 0))]
    fn new(x: i64, y: i64, turns: i64) -> PyResult<Self> {
        Ok(PyAngle(contact_cuts::Angle::new(direction(x, y)?, turns)))
    }

    /// Parses the `x,y;turns` literal.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(PyAngle).map_err(value_error)
    }

    #[getter]
    fn direction(&self) -> (i64, i64) {
        self.0.dir().components()
    }

    #[getter]
    fn turns(&self) -> i64 {
        self.0.turns()
    }

    fn __float__(&self) -> f64 {
        self.0.to_f64()
    }

    fn __richcmp__(&self, other: &PyAngle, op: CompareOp) -> bool {
        op.matches(self.0.cmp(&other.0))
    }

    fn __hash__(&self) -> u64 {
        let (x, y) = self.0.dir().components();
        (x as u64).wrapping_mul(0x9e37_79b9).wrapping_add(y as u64).wrapping_mul(31).wrapping_add(self.0.turns() as u64)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Angle('{}')", self.0)
    }
}

/// A validated cut: invariant contact form plus the two collapse vectors.
#[pyclass(name = "Cut", frozen, skip_from_py_object, module = "contact_cuts_py")]
#[derive(Clone)]
struct PyCut(CutSpec);

#[pymethods]
impl PyCut {
    /// Parses spec-file text; a line-type form without collapse keys is rejected.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        match parse_spec(text).map_err(value_error)? {
            ParsedInput::Cut(spec) => Ok(PyCut(spec)),
            ParsedInput::Line(_) => Err(value_error("expected collapse0 and collapse1")),
        }
    }

    #[staticmethod]
    fn alpha(k: u32) -> PyResult<Self> {
        alpha_k_spec(k).map(PyCut).map_err(value_error)
    }

    #[staticmethod]
    #[pyo3(signature = (k, l, j = 1))]
    fn lens(k: i64, l: i64, j: u32) -> PyResult<Self> {
        lens_spec(k, l, j).map(PyCut).map_err(value_error)
    }

    #[getter]
    fn collapse(&self) -> ((i64, i64), (i64, i64)) {
        (self.0.v0().components(), self.0.v1().components())
    }

    #[getter]
    fn phi_range(&self) -> (PyAngle, PyAngle) {
        let phi = self.0.form().phi();
        (PyAngle(phi.start()), PyAngle(phi.end()))
    }

    #[getter]
    fn sweep(&self) -> PyAngle {
        PyAngle(self.0.form().sweep())
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        record_dict(py, &with_lens(Record::new("lens"), &classify_lens(&self.0)))
    }

    fn cc_count(&self, x: i64, y: i64) -> PyResult<u64> {
        Ok(cc_count(&self.0, direction(x, y)?))
    }

    fn profile<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        record_dict(py, &profile_record(&cc_profile(&self.0)))
    }

    /// The first overtwisted disk found, or `None`.
    fn overtwisted<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyDict>>> {
        detect_overtwisted(&self.0)
            .map(|c| record_dict(py, &overtwisted_record(Some(&c)).with("verified", c.verify(&self.0))))
            .transpose()
    }

    fn overtwisted_all<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        overtwisted_disks(&self.0).iter().map(|c| record_dict(py, &overtwisted_record(Some(c)))).collect()
    }

    fn symplectization_check<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        commute_records(&check_cut_symplectization_commute(&self.0)).iter().map(|r| record_dict(py, r)).collect()
    }

    fn __str__(&self) -> String {
        write_spec(&self.0).unwrap_or_else(|| format!("{:?}", self.0))
    }

    fn __repr__(&self) -> String {
        let phi = self.0.form().phi();
        format!("Cut(phi=[{}, {}], collapse=(({}), ({})))", phi.start(), phi.end(), self.0.v0(), self.0.v1())
    }
}

/// A verified witness that `a` and `b` differ, or `None`.
#[pyfunction]
#[pyo3(signature = (a, b, mod_gl2z = false))]
fn distinguish<'py>(py: Python<'py>, a: &PyCut, b: &PyCut, mod_gl2z: bool) -> PyResult<Option<Bound<'py, PyDict>>> {
    let mode = if mod_gl2z { DistinguishMode::ModuloGl2z } else { DistinguishMode::FixedAction };
    distinguish_cuts(&a.0, &b.0, mode)
        .map(|w| record_dict(py, &witness_record(Some(&w), mode).with("verified", w.verify(&a.0, &b.0))))
        .transpose()
}

#[pyfunction]
fn homotopy<'py>(py: Python<'py>, a: &PyCut, b: &PyCut) -> PyResult<Bound<'py, PyDict>> {
    let h = homotopy_certificate(&a.0, &b.0).map_err(value_error)?;
    record_dict(py, &homotopy_record(&h))
}

/// `#{m : lo ≤ Arg(θ) + 2πm ≤ hi}`.
#[pyfunction]
fn lattice_count(theta: (i64, i64), lo: &PyAngle, hi: &PyAngle) -> PyResult<u64> {
    Ok(count_lattice(direction(theta.0, theta.1)?, lo.0, hi.0))
}

/// The example tables as report JSON.
#[pyfunction]
#[pyo3(signature = (kmax = 5))]
fn reproduce_paper(kmax: u32) -> String {
    reproduce(kmax, &DEFAULT_LENS_TABLE).to_json()
}

#[pymodule]
fn contact_cuts_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAngle>()?;
    m.add_class::<PyCut>()?;
    m.add_function(wrap_pyfunction!(distinguish, m)?)?;
    m.add_function(wrap_pyfunction!(homotopy, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_count, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce_paper, m)?)?;
    Ok(())
}

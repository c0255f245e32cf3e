//! Python bindings. Results that are trees or records come back as plain
//! Python dicts built from the same JSON the CLI emits.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;

use mnlogic::corpus;
use mnlogic::formula::{self, Sequent as CoreSequent};
use mnlogic::lattice::{Lattice, LatticeInfo, Logic, Matrix};
use mnlogic::oracle::Oracle;
use mnlogic::tableau::{self, ClosureMode, Strategy, TableauConfig};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    let json = PyModule::import(py, "json")?;
    Ok(json.call_method1("loads", (v.to_string(),))?.unbind())
}

/// A formula over `~`, `&`, `|` and variables.
#[pyclass(frozen, eq, hash, str, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct Formula(formula::Formula);

impl std::fmt::Display for Formula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[pymethods]
impl Formula {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(Formula).map_err(value_err)
    }

    fn render(&self) -> String {
        self.0.render()
    }

    fn dual(&self) -> Formula {
        Formula(self.0.dual())
    }

    fn variables(&self) -> Vec<String> {
        self.0.variables().into_iter().collect()
    }

    fn size(&self) -> usize {
        self.0.size()
    }

    fn __repr__(&self) -> String {
        format!("Formula({:?})", self.0.render())
    }
}

/// A sequent `premise |- conclusion`.
#[pyclass(frozen, eq, hash, str, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct Sequent(CoreSequent);

impl std::fmt::Display for Sequent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[pymethods]
impl Sequent {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(Sequent).map_err(value_err)
    }

    #[getter]
    fn premise(&self) -> Formula {
        Formula(self.0.premise.clone())
    }

    #[getter]
    fn conclusion(&self) -> Formula {
        Formula(self.0.conclusion.clone())
    }

    fn render(&self) -> String {
        self.0.render()
    }

    fn render_compact(&self) -> String {
        self.0.render_compact()
    }

    fn dual(&self) -> Sequent {
        Sequent(self.0.dual())
    }

    fn __repr__(&self) -> String {
        format!("Sequent({:?})", self.0.render())
    }
}

fn sequent_arg(s: &Bound<'_, PyAny>) -> PyResult<CoreSequent> {
    if let Ok(seq) = s.cast::<Sequent>() {
        return Ok(seq.get().0.clone());
    }
    let text: String = s.extract()?;
    text.parse().map_err(value_err)
}

fn parse_logic(logic: &str) -> PyResult<Logic> {
    logic.parse().map_err(value_err)
}

#[pyfunction]
fn parse(text: &str) -> PyResult<Sequent> {
    Sequent::new(text)
}

/// Runs the tableau prover and returns the proof record as a dict.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
#[pyo3(signature = (sequent, logic = "etl", lattice = "m3", mode = "paper", strategy = "greedy", tr_rules = false, node_cap = tableau::DEFAULT_NODE_CAP))]
fn prove(
    py: Python<'_>,
    sequent: &Bound<'_, PyAny>,
    logic: &str,
    lattice: &str,
    mode: &str,
    strategy: &str,
    tr_rules: bool,
    node_cap: usize,
) -> PyResult<Py<PyAny>> {
    let s = sequent_arg(sequent)?;
    let logic = parse_logic(logic)?;
    let cap = Lattice::by_id(lattice)
        .map_err(value_err)?
        .capacity()
        .ok_or_else(|| value_err(format!("the tableau prover does not support {lattice}")))?;
    let config = TableauConfig::new(cap)
        .mode(mode.parse::<ClosureMode>().map_err(value_err)?)
        .strategy(strategy.parse::<Strategy>().map_err(value_err)?)
        .tr_rules(tr_rules)
        .node_cap(node_cap);
    let result = py
        .detach(|| tableau::prove(&s, logic, &config))
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &tableau::proof_json(&result))
}

/// Decides a sequent by valuation search; returns a dict with `valid`,
/// `examined` and, when invalid, `countermodel`.
#[pyfunction]
#[pyo3(signature = (sequent, logic = "etl", lattice = "m3", var_cap = mnlogic::oracle::DEFAULT_VAR_CAP))]
fn check(py: Python<'_>, sequent: &Bound<'_, PyAny>, logic: &str, lattice: &str, var_cap: usize) -> PyResult<Py<PyAny>> {
    let s = sequent_arg(sequent)?;
    let l = Lattice::by_id(lattice).map_err(value_err)?;
    let m = Matrix::new(l, parse_logic(logic)?).map_err(value_err)?;
    let v = py
        .detach(|| Oracle::with_var_cap(var_cap).entails(&m, &s))
        .map_err(value_err)?;
    let mut doc = serde_json::json!({ "valid": v.valid, "examined": v.examined });
    if let Some(cm) = &v.countermodel {
        doc["countermodel"] = serde_json::json!(cm.named(&m.lattice));
    }
    to_py(py, &doc)
}

/// Shorthand for `check(...)["valid"]`.
#[pyfunction]
#[pyo3(signature = (sequent, logic = "etl", lattice = "m3"))]
fn entails(sequent: &Bound<'_, PyAny>, logic: &str, lattice: &str) -> PyResult<bool> {
    let s = sequent_arg(sequent)?;
    let l = Lattice::by_id(lattice).map_err(value_err)?;
    let m = Matrix::new(l, parse_logic(logic)?).map_err(value_err)?;
    Oracle::default().entails(&m, &s).map(|v| v.valid).map_err(value_err)
}

#[pyfunction]
fn gen_dn(n: usize) -> PyResult<Sequent> {
    formula::gen_dn(n).map(Sequent).map_err(value_err)
}

#[pyfunction]
fn gen_eq3() -> Sequent {
    Sequent(formula::gen_eq3())
}

#[pyfunction]
fn lattice_info(py: Python<'_>, id: &str) -> PyResult<Py<PyAny>> {
    let info = LatticeInfo::of(&Lattice::by_id(id).map_err(value_err)?);
    to_py(py, &serde_json::to_value(info).map_err(value_err)?)
}

/// The built-in corpus as a list of dicts.
#[pyfunction]
fn corpus_entries(py: Python<'_>) -> PyResult<Py<PyAny>> {
    to_py(py, &serde_json::to_value(corpus::corpus()).map_err(value_err)?)
}

#[pymodule]
fn mnlogic_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Formula>()?;
    m.add_class::<Sequent>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(prove, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(entails, m)?)?;
    m.add_function(wrap_pyfunction!(gen_dn, m)?)?;
    m.add_function(wrap_pyfunction!(gen_eq3, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_info, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_entries, m)?)?;
    Ok(())
}

//! Python bindings for `dsr-core`. Vertices are integers, token
//! configurations are lists of vertices (repetition is multiplicity), moves
//! are `(from, to)` pairs and assignments are lists of booleans.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use dsr_core::carc::{self, CarcCase, SolveOptions};
use dsr_core::geom::{self, Arc};
use dsr_core::graph::{format_graph, parse_graph};
use dsr_core::oracle::{self, OracleOptions};
use dsr_core::reduction::{self, Assignment, CnfFormula, ReductionLayout};
use dsr_core::{Error, ReconfSequence, SlideMove, TokenConfig};

create_exception!(dsr, DsrError, PyException);
create_exception!(dsr, ResourceLimitError, DsrError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::ResourceLimit { .. } => ResourceLimitError::new_err(e.to_string()),
        _ => DsrError::new_err(e.to_string()),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for dsr_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn tokens(v: Vec<usize>) -> TokenConfig {
    TokenConfig::new(v)
}

fn moves_in(v: Vec<(usize, usize)>) -> Vec<SlideMove> {
    v.into_iter().map(|(a, b)| SlideMove::new(a, b)).collect()
}

fn moves_out(v: &[SlideMove]) -> Vec<(usize, usize)> {
    v.iter().map(|m| (m.from, m.to)).collect()
}

#[pyclass(name = "Graph", frozen)]
struct PyGraph(dsr_core::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        dsr_core::Graph::from_edges(vertex_count, edges)
            .py()
            .map(PyGraph)
    }

    /// Reads the `graph N` / `edge U V` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_graph(text).py().map(PyGraph)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.0.vertex_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().collect()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.0.vertex_count() {
            return Err(py_err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.0.vertex_count(),
            }));
        }
        Ok(self.0.neighbors(v).to_vec())
    }

    fn is_connected(&self) -> bool {
        self.0.is_connected()
    }

    fn is_dominating(&self, tokens: Vec<usize>) -> PyResult<bool> {
        dsr_core::is_dominating(&self.0, &TokenConfig::new(tokens)).py()
    }

    fn __str__(&self) -> String {
        format_graph(&self.0)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(vertex_count={}, edges={})",
            self.0.vertex_count(),
            self.0.edge_count()
        )
    }
}

/// Circular-arc model; an arc is `(l, r)` spanning clockwise from `l` to
/// `r`, or `None` for an arc covering the whole circle.
#[pyclass(name = "CircularArcModel", frozen)]
struct PyArcModel(geom::CircularArcModel);

#[pymethods]
impl PyArcModel {
    #[new]
    fn new(circumference: i64, arcs: Vec<Option<(i64, i64)>>) -> PyResult<Self> {
        let arcs = arcs
            .into_iter()
            .map(|a| match a {
                Some((l, r)) => Arc::Span { l, r },
                None => Arc::Full,
            })
            .collect();
        geom::CircularArcModel::new(circumference, arcs)
            .py()
            .map(PyArcModel)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().py().map(PyArcModel)
    }

    /// The cycle `C_n` as a circular-arc model.
    #[staticmethod]
    fn ring(n: usize) -> Self {
        PyArcModel(geom::ring_model(n))
    }

    #[getter]
    fn circumference(&self) -> i64 {
        self.0.circumference()
    }

    fn arcs(&self) -> Vec<Option<(i64, i64)>> {
        self.0
            .arcs()
            .iter()
            .map(|a| match *a {
                Arc::Span { l, r } => Some((l, r)),
                Arc::Full => None,
            })
            .collect()
    }

    fn graph(&self) -> PyGraph {
        PyGraph(self.0.intersection_graph())
    }

    fn maximal_arcs(&self) -> Vec<usize> {
        self.0.maximal_arcs()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// Closed bounded intervals `(l, r)`.
#[pyclass(name = "IntervalModel", frozen)]
struct PyIntervalModel(geom::IntervalModel);

#[pymethods]
impl PyIntervalModel {
    #[new]
    fn new(intervals: Vec<(i64, i64)>) -> PyResult<Self> {
        geom::IntervalModel::from_bounded(&intervals)
            .py()
            .map(PyIntervalModel)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().py().map(PyIntervalModel)
    }

    fn graph(&self) -> PyGraph {
        PyGraph(self.0.intersection_graph())
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// Chords given by their two endpoints on a line; two chords are adjacent
/// when their endpoints interleave.
#[pyclass(name = "ChordModel", frozen)]
struct PyChordModel(geom::ChordModel);

#[pymethods]
impl PyChordModel {
    #[new]
    fn new(intervals: Vec<(i64, i64)>) -> PyResult<Self> {
        geom::ChordModel::new(intervals).py().map(PyChordModel)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().py().map(PyChordModel)
    }

    fn intervals(&self) -> Vec<(i64, i64)> {
        self.0.intervals().to_vec()
    }

    fn graph(&self) -> PyGraph {
        PyGraph(self.0.overlap_graph())
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// CNF formula; clauses are lists of nonzero DIMACS literals.
#[pyclass(name = "Formula", frozen)]
struct PyFormula(CnfFormula);

#[pymethods]
impl PyFormula {
    #[new]
    fn new(num_vars: usize, clauses: Vec<Vec<i64>>) -> PyResult<Self> {
        let refs: Vec<&[i64]> = clauses.iter().map(Vec::as_slice).collect();
        CnfFormula::from_dimacs_clauses(num_vars, &refs)
            .py()
            .map(PyFormula)
    }

    /// Reads DIMACS CNF text.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().py().map(PyFormula)
    }

    #[getter]
    fn num_vars(&self) -> usize {
        self.0.num_vars()
    }

    fn clauses(&self) -> Vec<Vec<i64>> {
        self.0
            .clauses()
            .iter()
            .map(|c| c.iter().map(|x| x.to_dimacs()).collect())
            .collect()
    }

    /// The clause list repeated up to the next multiple of 4 clauses.
    fn pad(&self) -> PyResult<Self> {
        self.0.pad_clauses().py().map(PyFormula)
    }

    fn satisfies(&self, bits: Vec<bool>) -> PyResult<bool> {
        if bits.len() != self.0.num_vars() {
            return Err(DsrError::new_err("assignment length does not match"));
        }
        Ok(self.0.satisfies(&Assignment::new(bits)))
    }

    fn satisfying_assignments(&self) -> PyResult<Vec<Vec<bool>>> {
        if self.0.num_vars() >= 24 {
            return Err(DsrError::new_err("too many variables to enumerate"));
        }
        Ok(self
            .0
            .satisfying_assignments()
            .into_iter()
            .map(|a| a.bits().to_vec())
            .collect())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// The circle graph built from a formula, with its vertex registry.
#[pyclass(name = "Reduction", frozen)]
struct PyReduction(ReductionLayout);

impl PyReduction {
    fn assignment(&self, bits: Vec<bool>) -> PyResult<Assignment> {
        if bits.len() != self.0.params().n {
            return Err(DsrError::new_err(format!(
                "assignment has {} variables, formula has {}",
                bits.len(),
                self.0.params().n
            )));
        }
        Ok(Assignment::new(bits))
    }
}

#[pymethods]
impl PyReduction {
    /// The formula must have a positive multiple of 4 clauses; `Formula.pad`
    /// repeats the clause list to get there.
    #[new]
    #[pyo3(signature = (formula, pending_count=None))]
    fn new(formula: &PyFormula, pending_count: Option<usize>) -> PyResult<Self> {
        reduction::build_reduction(&formula.0, pending_count)
            .py()
            .map(PyReduction)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.0.vertex_count()
    }

    /// Token budget `K`.
    #[getter]
    fn k(&self) -> usize {
        self.0.params().k
    }

    #[getter]
    fn pending_count(&self) -> usize {
        self.0.params().pending_count
    }

    #[getter]
    fn junction(&self) -> usize {
        self.0.junction()
    }

    fn formula(&self) -> PyFormula {
        PyFormula(self.0.formula().clone())
    }

    fn chords(&self) -> PyChordModel {
        PyChordModel(self.0.chords().clone())
    }

    fn graph(&self) -> PyGraph {
        PyGraph(self.0.graph().clone())
    }

    fn label(&self, v: usize) -> PyResult<String> {
        if v >= self.0.vertex_count() {
            return Err(py_err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.0.vertex_count(),
            }));
        }
        Ok(self.0.label(v))
    }

    fn lookup(&self, label: &str) -> Option<usize> {
        self.0.lookup(label)
    }

    /// Names of the structural checks that failed, with their messages.
    fn verify(&self) -> Vec<(String, Vec<String>)> {
        reduction::verify_structure(&self.0)
            .failed()
            .map(|c| (c.name.to_string(), c.failures.clone()))
            .collect()
    }

    fn dominating_set(&self, bits: Vec<bool>) -> PyResult<Vec<usize>> {
        let a = self.assignment(bits)?;
        Ok(reduction::df_assignment(&self.0, &a)
            .py()?
            .as_slice()
            .to_vec())
    }

    fn flip_sequence(
        &self,
        bits: Vec<bool>,
        var: usize,
        value: bool,
    ) -> PyResult<Vec<(usize, usize)>> {
        let a = self.assignment(bits)?;
        reduction::flip_sequence(&self.0, &a, var, value)
            .py()
            .map(|m| moves_out(&m))
    }

    /// Start configuration and moves for a chain of variable flips.
    fn simulate_flips(
        &self,
        bits: Vec<bool>,
        flips: Vec<usize>,
    ) -> PyResult<(Vec<usize>, Vec<(usize, usize)>)> {
        let a = self.assignment(bits)?;
        let seq = reduction::simulate_flips(&self.0, &a, &flips).py()?;
        Ok((seq.start.as_slice().to_vec(), moves_out(&seq.moves)))
    }

    fn moving_variable(&self, tokens: Vec<usize>) -> PyResult<Option<usize>> {
        reduction::moving_variable(&self.0, &TokenConfig::new(tokens)).py()
    }

    fn extract_assignment(&self, tokens: Vec<usize>) -> PyResult<Vec<bool>> {
        reduction::extract_assignment(&self.0, &TokenConfig::new(tokens))
            .py()
            .map(|a| a.bits().to_vec())
    }
}

#[pyfunction]
fn apply_slide(g: &PyGraph, tokens: Vec<usize>, from: usize, to: usize) -> PyResult<Vec<usize>> {
    dsr_core::apply_slide(&g.0, &self::tokens(tokens), SlideMove::new(from, to))
        .py()
        .map(|c| c.as_slice().to_vec())
}

/// `None` when the sequence is valid, otherwise a description of the first
/// failure.
#[pyfunction]
#[pyo3(signature = (g, start, moves, require_domination=true))]
fn validate_sequence(
    g: &PyGraph,
    start: Vec<usize>,
    moves: Vec<(usize, usize)>,
    require_domination: bool,
) -> Option<String> {
    let seq = ReconfSequence::new(tokens(start), moves_in(moves));
    dsr_core::validate_sequence(&g.0, &seq, require_domination)
        .failure
        .map(|f| f.to_string())
}

#[pyfunction]
fn decide_carc(model: &PyArcModel, ds: Vec<usize>, dt: Vec<usize>) -> PyResult<bool> {
    carc::decide_carc(&model.0, &tokens(ds), &tokens(dt)).py()
}

/// `(reachable, case, moves)`; `moves` is set only with `witness=True` on a
/// positive answer.
#[pyfunction]
#[pyo3(signature = (model, ds, dt, witness=false))]
fn solve_carc(
    model: &PyArcModel,
    ds: Vec<usize>,
    dt: Vec<usize>,
    witness: bool,
) -> PyResult<(bool, String, Option<Vec<(usize, usize)>>)> {
    let opts = SolveOptions {
        witness,
        ..SolveOptions::default()
    };
    let v = carc::solve_carc(&model.0, &tokens(ds), &tokens(dt), opts).py()?;
    let case = match v.case {
        CarcCase::SizeMismatch => "size-mismatch",
        CarcCase::FullCircle { .. } => "full-circle",
        CarcCase::Interval => "interval",
        CarcCase::Sliding { .. } => "sliding",
    };
    Ok((
        v.reachable,
        case.to_string(),
        v.witness.map(|s| moves_out(&s.moves)),
    ))
}

/// Shortest slide sequence by exhaustive search, or `None`.
#[pyfunction]
#[pyo3(signature = (g, ds, dt, cap=None))]
fn reconfig_bfs(
    g: &PyGraph,
    ds: Vec<usize>,
    dt: Vec<usize>,
    cap: Option<u128>,
) -> PyResult<Option<Vec<(usize, usize)>>> {
    let opts = OracleOptions {
        cap: cap.unwrap_or(oracle::DEFAULT_CAP),
        ..OracleOptions::default()
    };
    oracle::reconfig_bfs(&g.0, &tokens(ds), &tokens(dt), true, opts)
        .py()
        .map(|s| s.map(|s| moves_out(&s.moves)))
}

/// Shortest chain of variable flips through satisfying assignments.
#[pyfunction]
fn satr_bfs(f: &PyFormula, a_s: Vec<bool>, a_t: Vec<bool>) -> PyResult<Option<Vec<usize>>> {
    oracle::satr_bfs(&f.0, &Assignment::new(a_s), &Assignment::new(a_t)).py()
}

#[pymodule]
pub fn dsr(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DsrError", m.py().get_type::<DsrError>())?;
    m.add(
        "ResourceLimitError",
        m.py().get_type::<ResourceLimitError>(),
    )?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyArcModel>()?;
    m.add_class::<PyIntervalModel>()?;
    m.add_class::<PyChordModel>()?;
    m.add_class::<PyFormula>()?;
    m.add_class::<PyReduction>()?;
    m.add_function(wrap_pyfunction!(apply_slide, m)?)?;
    m.add_function(wrap_pyfunction!(validate_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(decide_carc, m)?)?;
    m.add_function(wrap_pyfunction!(solve_carc, m)?)?;
    m.add_function(wrap_pyfunction!(reconfig_bfs, m)?)?;
    m.add_function(wrap_pyfunction!(satr_bfs, m)?)?;
    Ok(())
}

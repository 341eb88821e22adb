//! Python bindings: graphs, exact chain quantities, seeded cover-time
//! estimates, experiment sweeps and the acceptance criteria.
//!
//! Structured results cross the boundary as JSON and come back as plain
//! Python dicts and lists.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use multiwalk::bounds::{exact_quantities, ExactOptions};
use multiwalk::chain::{distance_profile as profile_of, transition_matrix as matrix_of, CrossingSearch, Laziness};
use multiwalk::graph::{build_family, stationary_distribution, FamilySpec, WeightedGraph};
use multiwalk::harness::{
    run_criterion as criterion, run_experiment as experiment, AcceptanceSettings, ExperimentConfig,
};
use multiwalk::sim::{estimate_cover_time as estimate, StartSpec, TrialPlan};

fn err(e: multiwalk::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn laziness(lazy: bool) -> Laziness {
    if lazy {
        Laziness::Lazy
    } else {
        Laziness::NonLazy
    }
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// Undirected weighted graph.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: WeightedGraph,
    family: Option<FamilySpec>,
}

#[pymethods]
impl PyGraph {
    /// Builds a graph from `(u, v)` or `(u, v, weight)` tuples.
    #[new]
    fn new(n: usize, edges: Vec<Vec<f64>>) -> PyResult<Self> {
        let mut list = Vec::with_capacity(edges.len());
        for e in &edges {
            let (u, v, w) = match e.as_slice() {
                [u, v] => (*u, *v, 1.0),
                [u, v, w] => (*u, *v, *w),
                _ => return Err(PyValueError::new_err("edges must be (u, v) or (u, v, weight)")),
            };
            list.push((u as usize, v as usize, w));
        }
        Ok(Self {
            inner: WeightedGraph::from_edges(n, list).map_err(err)?,
            family: None,
        })
    }

    /// Family graph from its shorthand, e.g. `cycle:64` or `torus:2:16`.
    #[staticmethod]
    fn family(spec: &str) -> PyResult<Self> {
        let family: FamilySpec = spec.parse().map_err(err)?;
        Ok(Self {
            inner: build_family(&family).map_err(err)?,
            family: Some(family),
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.vertex_count() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.degree(v))
    }

    fn edges(&self) -> Vec<(usize, usize, f64)> {
        self.inner.edges()
    }

    fn stationary(&self) -> Vec<f64> {
        stationary_distribution(&self.inner)
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn __repr__(&self) -> String {
        match &self.family {
            Some(f) => format!("Graph.family('{f}')"),
            None => format!(
                "Graph(n={}, edges={})",
                self.inner.vertex_count(),
                self.inner.edge_count()
            ),
        }
    }
}

/// Dense transition matrix as a list of rows.
#[pyfunction]
#[pyo3(signature = (graph, lazy = true))]
fn transition_matrix(graph: &PyGraph, lazy: bool) -> PyResult<Vec<Vec<f64>>> {
    let p = matrix_of(&graph.inner, laziness(lazy)).map_err(err)?;
    let n = p.size();
    Ok((0..n).map(|u| (0..n).map(|v| p.get(u, v)).collect()).collect())
}

/// Worst-case total variation and separation distances for `t = 0..=t_max`.
#[pyfunction]
#[pyo3(signature = (graph, t_max, lazy = true))]
fn distance_profile(py: Python<'_>, graph: &PyGraph, t_max: u64, lazy: bool) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let g = &graph.inner;
    let prof = py
        .detach(|| matrix_of(g, laziness(lazy)).and_then(|p| profile_of(&p, t_max)))
        .map_err(err)?;
    Ok((prof.tv, prof.separation))
}

/// First `t >= 1` with `d(t) <= eps`, or `None` beyond `cap`.
#[pyfunction]
#[pyo3(signature = (graph, eps = 0.25, lazy = true, cap = 1 << 26))]
fn mixing_time(py: Python<'_>, graph: &PyGraph, eps: f64, lazy: bool, cap: u64) -> PyResult<Option<u64>> {
    let g = &graph.inner;
    py.detach(|| {
        let p = matrix_of(g, laziness(lazy))?;
        Ok(CrossingSearch::new(&p, cap).mixing_time(eps))
    })
    .map_err(err)
}

/// First `t >= 1` with separation at most `1 - k_tilde/k`, or `None` beyond `cap`.
#[pyfunction]
#[pyo3(signature = (graph, k_tilde, k, lazy = true, cap = 1 << 26))]
fn partial_mixing_time(
    py: Python<'_>,
    graph: &PyGraph,
    k_tilde: u64,
    k: u64,
    lazy: bool,
    cap: u64,
) -> PyResult<Option<u64>> {
    let g = &graph.inner;
    py.detach(|| {
        let p = matrix_of(g, laziness(lazy))?;
        CrossingSearch::new(&p, cap).partial_mixing_time(k_tilde, k)
    })
    .map_err(err)
}

/// Exact quantities (relaxation, mixing, hitting, conductance, partial
/// mixing for every `k_tilde < k` of each `k`) as a dict.
#[pyfunction]
#[pyo3(signature = (graph, k = Vec::new(), lazy = true))]
fn analyze(py: Python<'_>, graph: &PyGraph, k: Vec<u64>, lazy: bool) -> PyResult<Py<PyAny>> {
    let opts = ExactOptions {
        laziness: laziness(lazy),
        pairs: k.iter().flat_map(|&k| (1..k).map(move |kt| (kt, k))).collect(),
        ..ExactOptions::default()
    };
    let (g, family) = (&graph.inner, graph.family.as_ref());
    let q = py.detach(|| exact_quantities(g, family, &opts)).map_err(err)?;
    to_py(py, &q)
}

/// Monte-Carlo expected cover time of `k` walks. `start` is `stationary`,
/// `vertex:V` or `tuple:V1,V2,...`. Results depend only on the seed.
#[pyfunction]
#[pyo3(signature = (graph, k, start = "stationary", lazy = true, trials = 400, seed = 0, horizon = None))]
#[allow(clippy::too_many_arguments)]
fn estimate_cover_time(
    py: Python<'_>,
    graph: &PyGraph,
    k: usize,
    start: &str,
    lazy: bool,
    trials: usize,
    seed: u64,
    horizon: Option<u64>,
) -> PyResult<Py<PyAny>> {
    let start: StartSpec = start.parse().map_err(err)?;
    let plan = TrialPlan {
        trials,
        horizon,
        master_seed: seed,
    };
    let g = &graph.inner;
    let est = py
        .detach(|| estimate(g, k, &start, laziness(lazy), &plan))
        .map_err(err)?;
    to_py(py, &est)
}

/// Runs an experiment config given as JSON and returns the report bundle.
#[pyfunction]
fn run_experiment(py: Python<'_>, config_json: &str) -> PyResult<Py<PyAny>> {
    let cfg = ExperimentConfig::from_json(config_json).map_err(err)?;
    let bundle = py.detach(|| experiment(&cfg)).map_err(err)?;
    to_py(py, &bundle)
}

/// Runs one acceptance criterion with default settings (optionally another
/// master seed) and returns its outcome.
#[pyfunction]
#[pyo3(signature = (id, seed = None))]
fn run_criterion(py: Python<'_>, id: u8, seed: Option<u64>) -> PyResult<Py<PyAny>> {
    let mut settings = AcceptanceSettings::default();
    if let Some(s) = seed {
        settings.master_seed = s;
    }
    let outcome = py.detach(|| criterion(id, &settings)).map_err(err)?;
    to_py(py, &outcome)
}

#[pymodule]
#[pyo3(name = "multiwalk")]
fn multiwalk_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(transition_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(distance_profile, m)?)?;
    m.add_function(wrap_pyfunction!(mixing_time, m)?)?;
    m.add_function(wrap_pyfunction!(partial_mixing_time, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_cover_time, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(run_criterion, m)?)?;
    Ok(())
}

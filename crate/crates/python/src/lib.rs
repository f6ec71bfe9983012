//! Python bindings: benchmark evaluation, seeded optimizer runs, swap
//! algebra on tours, the brute-force oracle and the DTSP simulator.
//!
//! Swap positions are 1-based on the Python side, like in the
//! `MO(i, j)` notation.

use std::collections::HashMap;
use std::path::Path;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use osoma_core::dynamic::{
    io, simulate as run_scenario, DynamicCostMatrix, ReplayProvider, SimulationConfig,
};
use osoma_core::dynamic::{City, CostProvider, EventSchedule};
use osoma_core::experiment::{ExperimentConfig, InstanceStyle, Mode};
use osoma_core::tsp::{self, SwapOperator, Tour};
use osoma_core::{benchmarks, Algorithm, Error, RunConfig};

fn py_err(e: Error) -> PyErr {
    if e.is_validation() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn overrides(params: Option<HashMap<String, f64>>) -> PyResult<osoma_core::experiment::Parameters> {
    let mut config = ExperimentConfig::new(Mode::Benchmark, "");
    let mut pairs: Vec<_> = params.unwrap_or_default().into_iter().collect();
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    config.overrides = pairs;
    config.parameters().map_err(py_err)
}

/// `(id, name)` of every registered benchmark function.
#[pyfunction]
fn benchmark_names() -> Vec<(String, String)> {
    benchmarks::registry()
        .iter()
        .map(|f| (f.id.to_string(), f.name.to_string()))
        .collect()
}

/// Evaluate benchmark `name` (id or name) at `x`.
#[pyfunction]
fn evaluate(name: &str, x: Vec<f64>) -> PyResult<f64> {
    benchmarks::evaluate(name, &x).map_err(py_err)
}

#[pyclass(frozen, get_all, module = "osoma")]
struct RunResult {
    best_position: Vec<f64>,
    best_fitness: f64,
    /// `(iteration, best fitness)` pairs, starting at iteration 0.
    history: Vec<(usize, f64)>,
}

#[pymethods]
impl RunResult {
    fn __repr__(&self) -> String {
        format!(
            "RunResult(best_fitness={:e}, iterations={})",
            self.best_fitness,
            self.history.len() - 1
        )
    }
}

/// Minimize a benchmark function with `soma`, `osoma`, `de` or `pso`.
/// `params` overrides defaults by key (`pr`, `step`, `f`, `inertia`, ...).
#[pyfunction]
#[pyo3(signature = (algorithm, function, dimension, seed=0, population_size=20, iterations=100, params=None))]
fn run(
    algorithm: &str,
    function: &str,
    dimension: usize,
    seed: u64,
    population_size: usize,
    iterations: usize,
    params: Option<HashMap<String, f64>>,
) -> PyResult<RunResult> {
    let algorithm: Algorithm = algorithm.parse().map_err(py_err)?;
    let f = benchmarks::lookup(function).map_err(py_err)?;
    let space = f.space(dimension).map_err(py_err)?;
    let p = overrides(params)?;
    let config = RunConfig {
        population_size,
        max_iterations: iterations,
        target_fitness: p.target_fitness,
        soma: p.soma,
        de: p.de,
        pso: p.pso,
    };
    let r = osoma_core::run(algorithm, f, &space, &config, seed).map_err(py_err)?;
    Ok(RunResult {
        best_position: r.best_position.to_vec(),
        best_fitness: r.best_fitness,
        history: r.history,
    })
}

/// `tour ⊕ MO(i, j)` with 1-based positions.
#[pyfunction]
fn swap_apply(tour: Vec<usize>, i: usize, j: usize) -> PyResult<Vec<usize>> {
    let tour = Tour::new(tour).map_err(py_err)?;
    let op = SwapOperator::one_based(i, j).map_err(py_err)?;
    Ok(tsp::apply(&tour, op).map_err(py_err)?.into_vec())
}

/// The swap sequence turning `source` into `target`, as 1-based pairs.
#[pyfunction]
fn swap_subtract(target: Vec<usize>, source: Vec<usize>) -> PyResult<Vec<(usize, usize)>> {
    let target = Tour::new(target).map_err(py_err)?;
    let source = Tour::new(source).map_err(py_err)?;
    let seq = tsp::subtract(&target, &source).map_err(py_err)?;
    Ok(seq.ops().iter().map(|op| op.positions_one_based()).collect())
}

fn matrix_from(costs: Vec<Vec<f64>>) -> PyResult<DynamicCostMatrix> {
    let cities = (0..costs.len()).map(|k| City::new(k.to_string(), "")).collect();
    DynamicCostMatrix::new(cities, costs).map_err(py_err)
}

/// Exact optimum of a small (at most 12 cities) directed cost matrix:
/// `(tour, cost)` with 0-based city indices.
#[pyfunction]
fn brute_force(costs: Vec<Vec<f64>>) -> PyResult<(Vec<usize>, f64)> {
    let m = matrix_from(costs)?;
    let (tour, cost) = tsp::brute_force_optimum(&m, 0).map_err(py_err)?;
    Ok((tour.into_vec(), cost))
}

/// Closed-cycle cost of `tour` under `costs`.
#[pyfunction]
fn tour_cost(tour: Vec<usize>, costs: Vec<Vec<f64>>) -> PyResult<f64> {
    let m = matrix_from(costs)?;
    let tour = Tour::new(tour).map_err(py_err)?;
    tsp::tour_cost(&tour, &m, 0).map_err(py_err)
}

/// A synthetic instance file as JSON text.
#[pyfunction]
#[pyo3(signature = (cities, seed=0, style="euclidean"))]
fn generate_instance(cities: usize, seed: u64, style: &str) -> PyResult<String> {
    let style: InstanceStyle = style.parse().map_err(py_err)?;
    let inst = osoma_core::experiment::generate_instance(cities, seed, style).map_err(py_err)?;
    serde_json::to_string_pretty(&inst).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Instance plus schedule (one city added at `add_at`, one edge batch at
/// `update_at`) as a pair of JSON texts.
#[pyfunction]
#[pyo3(signature = (cities, seed=0, style="euclidean", add_at=15, update_at=35))]
fn generate_scenario(
    cities: usize,
    seed: u64,
    style: &str,
    add_at: u64,
    update_at: u64,
) -> PyResult<(String, String)> {
    let style: InstanceStyle = style.parse().map_err(py_err)?;
    let s =
        osoma_core::experiment::generate_scenario(cities, seed, style, add_at, update_at).map_err(py_err)?;
    let json = |v: serde_json::Result<String>| v.map_err(|e| PyRuntimeError::new_err(e.to_string()));
    Ok((
        json(serde_json::to_string_pretty(&s.instance))?,
        json(serde_json::to_string_pretty(&s.schedule))?,
    ))
}

#[pyclass(frozen, get_all, module = "osoma")]
struct Scenario {
    algorithm: String,
    seed: u64,
    /// `(iteration, best cost, [event kinds])` rows, starting at 0.
    history: Vec<(u64, f64, Vec<String>)>,
    tour: Vec<String>,
    cost: f64,
}

#[pymethods]
impl Scenario {
    fn __repr__(&self) -> String {
        format!(
            "Scenario(algorithm={:?}, seed={}, cost={})",
            self.algorithm, self.seed, self.cost
        )
    }
}

/// Replay `schedule` (JSON text, optional) over `instance` (JSON text) with
/// one algorithm and seed.
#[pyfunction]
#[pyo3(signature = (instance, algorithm="osoma", schedule=None, seed=0, population_size=20, iterations=60, reinit_on_event=false, params=None))]
#[allow(clippy::too_many_arguments)]
fn simulate(
    instance: &str,
    algorithm: &str,
    schedule: Option<&str>,
    seed: u64,
    population_size: usize,
    iterations: u64,
    reinit_on_event: bool,
    params: Option<HashMap<String, f64>>,
) -> PyResult<Scenario> {
    let algorithm: Algorithm = algorithm.parse().map_err(py_err)?;
    let matrix = io::parse_instance(instance, Path::new("<instance>"))
        .and_then(|i| i.to_matrix())
        .map_err(py_err)?;
    let schedule = match schedule {
        Some(text) => io::parse_schedule(text, Path::new("<schedule>")).map_err(py_err)?,
        None => EventSchedule::default(),
    };
    let provider = ReplayProvider::new(matrix, schedule).map_err(py_err)?;
    let p = overrides(params)?;
    let config = SimulationConfig {
        population_size,
        max_iterations: iterations,
        soma: p.soma,
        de: p.de,
        pso: p.pso,
        reinit_on_event,
    };
    let r = run_scenario(&provider, algorithm, &config, seed).map_err(py_err)?;
    Ok(Scenario {
        algorithm: r.algorithm.to_string(),
        seed,
        history: r
            .history
            .iter()
            .map(|h| {
                (
                    h.iteration,
                    h.best_cost,
                    h.events.iter().map(|e| e.to_string()).collect(),
                )
            })
            .collect(),
        tour: provider.matrix().tour_ids(&r.final_tour),
        cost: r.final_cost,
    })
}

#[pymodule]
fn osoma(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<RunResult>()?;
    m.add_class::<Scenario>()?;
    m.add_function(wrap_pyfunction!(benchmark_names, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(swap_apply, m)?)?;
    m.add_function(wrap_pyfunction!(swap_subtract, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force, m)?)?;
    m.add_function(wrap_pyfunction!(tour_cost, m)?)?;
    m.add_function(wrap_pyfunction!(generate_instance, m)?)?;
    m.add_function(wrap_pyfunction!(generate_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    Ok(())
}

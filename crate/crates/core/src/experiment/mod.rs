//! Experiment runners behind the `osoma` command line.
//!
//! Every runner validates its whole configuration (and parses every input
//! file) before creating any output, and writes rows in a fixed order so
//! reruns with the same seeds are byte-identical.

mod config;
mod generate;
mod output;

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

pub use config::{
    parse_algorithms, parse_override, parse_seeds, ExperimentConfig, InstanceStyle, Mode, Parameters,
    PARAMETER_KEYS,
};
pub use generate::{generate_instance, generate_scenario, GeneratedScenario};
pub use output::{
    read_convergence, read_history, read_summary, ConvergenceRow, FinalTour, HistoryRow, SummaryRow,
};

use crate::benchmarks;
use crate::dynamic::{io, simulate, EventSchedule, ReplayProvider, ScenarioResult, SimulationConfig};
use crate::error::{Error, Result};
use crate::optimizers::{run, Algorithm, RunConfig, RunResult};

/// Paths written by [`run_benchmark_suite`].
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkOutput {
    pub summary: PathBuf,
    pub convergence: PathBuf,
    pub rows: Vec<SummaryRow>,
}

/// Paths written by [`run_dtsp_scenario`], one history file per seed.
#[derive(Debug, Clone, PartialEq)]
pub struct DtspOutput {
    pub histories: Vec<PathBuf>,
    pub tours: Vec<PathBuf>,
    pub results: Vec<ScenarioResult>,
}

fn create_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

struct BenchmarkJob {
    algorithm: Algorithm,
    function: &'static benchmarks::BenchmarkFunction,
    dimension: usize,
    seed: u64,
}

/// One run per `(algorithm, function, dimension, seed)`; writes
/// `summary.csv` and `convergence.csv` under `config.out`.
pub fn run_benchmark_suite(config: &ExperimentConfig) -> Result<BenchmarkOutput> {
    if config.mode != Mode::Benchmark {
        return Err(Error::Validation(
            "run_benchmark_suite needs mode = benchmark".into(),
        ));
    }
    config.validate()?;
    let params = config.parameters()?;
    let run_config = RunConfig {
        population_size: config.population_size,
        max_iterations: config.iterations(),
        target_fitness: params.target_fitness,
        soma: params.soma,
        de: params.de,
        pso: params.pso,
    };

    let mut algorithms = config.algorithms.clone();
    algorithms.sort_by_key(|a| a.name());
    let mut functions: Vec<_> = config
        .functions
        .iter()
        .map(|f| benchmarks::lookup(f))
        .collect::<Result<_>>()?;
    functions.sort_by_key(|f| f.name);
    functions.dedup_by_key(|f| f.name);
    let mut dimensions = config.dimensions.clone();
    dimensions.sort_unstable();
    dimensions.dedup();
    let mut seeds = config.seeds.clone();
    seeds.sort_unstable();

    let mut jobs = Vec::new();
    for &algorithm in &algorithms {
        for &function in &functions {
            for &dimension in &dimensions {
                for &seed in &seeds {
                    jobs.push(BenchmarkJob {
                        algorithm,
                        function,
                        dimension,
                        seed,
                    });
                }
            }
        }
    }

    let results: Vec<RunResult> = jobs
        .par_iter()
        .map(|job| {
            let space = job.function.space(job.dimension)?;
            run(job.algorithm, job.function, &space, &run_config, job.seed)
        })
        .collect::<Result<_>>()?;

    let rows: Vec<SummaryRow> = jobs
        .iter()
        .zip(&results)
        .map(|(job, r)| SummaryRow {
            algorithm: job.algorithm,
            function: job.function.name.to_string(),
            dimension: job.dimension,
            seed: job.seed,
            final_fitness: r.best_fitness,
            iterations: r.iterations(),
        })
        .collect();

    create_dir(&config.out)?;
    let summary = config.out.join("summary.csv");
    let convergence = config.out.join("convergence.csv");
    write_text(&summary, &output::summary_csv(&rows))?;
    let series: Vec<_> = jobs
        .iter()
        .zip(&results)
        .map(|(job, r)| {
            (
                job.algorithm,
                job.function.name,
                job.dimension,
                job.seed,
                r.history.as_slice(),
            )
        })
        .collect();
    write_text(&convergence, &output::convergence_csv(&series))?;
    Ok(BenchmarkOutput {
        summary,
        convergence,
        rows,
    })
}

/// Run every requested algorithm on the same instance, schedule and seeds.
/// Writes `history_seed<seed>.csv` and `final_<algorithm>_seed<seed>.json`.
pub fn run_dtsp_scenario(config: &ExperimentConfig) -> Result<DtspOutput> {
    if config.mode != Mode::Dtsp {
        return Err(Error::Validation("run_dtsp_scenario needs mode = dtsp".into()));
    }
    config.validate()?;
    let params = config.parameters()?;
    let instance_path = config.instance.as_ref().expect("validated");
    let matrix = io::read_instance(instance_path)?.to_matrix()?;
    let schedule = match &config.schedule {
        Some(path) => io::read_schedule(path)?,
        None => EventSchedule::default(),
    };
    let provider = ReplayProvider::new(matrix, schedule)
        .map_err(|e| Error::Validation(format!("{}: {e}", instance_path.display())))?;
    let sim = SimulationConfig {
        population_size: config.population_size,
        max_iterations: config.iterations() as u64,
        soma: params.soma,
        de: params.de,
        pso: params.pso,
        reinit_on_event: config.reinit_on_event,
    };

    let mut seeds = config.seeds.clone();
    seeds.sort_unstable();
    let jobs: Vec<(u64, Algorithm)> = seeds
        .iter()
        .flat_map(|&s| config.algorithms.iter().map(move |&a| (s, a)))
        .collect();
    let results: Vec<ScenarioResult> = jobs
        .par_iter()
        .map(|&(seed, algorithm)| simulate(&provider, algorithm, &sim, seed))
        .collect::<Result<_>>()?;

    create_dir(&config.out)?;
    let mut histories = Vec::new();
    let mut tours = Vec::new();
    for &seed in &seeds {
        let of_seed: Vec<&ScenarioResult> = results.iter().filter(|r| r.seed == seed).collect();
        let path = config.out.join(format!("history_seed{seed}.csv"));
        write_text(&path, &output::history_csv(&of_seed))?;
        histories.push(path);
        for r in of_seed {
            let path = config.out.join(format!("final_{}_seed{seed}.json", r.algorithm));
            let tour = FinalTour {
                algorithm: r.algorithm.to_string(),
                tour: provider_ids(&provider, r),
                cost: r.final_cost,
            };
            io::write_json(&path, &tour)?;
            tours.push(path);
        }
    }
    Ok(DtspOutput {
        histories,
        tours,
        results,
    })
}

fn provider_ids(provider: &ReplayProvider, result: &ScenarioResult) -> Vec<String> {
    use crate::dynamic::CostProvider;
    provider.matrix().tour_ids(&result.final_tour)
}

/// Writes `instance.json` and a matching `schedule.json` (one city added
/// at iteration 15, one batch of edge changes at 35) under `config.out`.
pub fn run_generate(config: &ExperimentConfig) -> Result<(PathBuf, PathBuf)> {
    config.validate()?;
    let seed = config.seeds[0];
    let scenario = generate_scenario(config.cities, seed, config.style, 15, 35)?;
    create_dir(&config.out)?;
    let instance = config.out.join("instance.json");
    let schedule = config.out.join("schedule.json");
    io::write_instance(&instance, &scenario.instance)?;
    io::write_schedule(&schedule, &scenario.schedule)?;
    Ok((instance, schedule))
}

/// Dispatch on `config.mode`; returns the files written.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<PathBuf>> {
    match config.mode {
        Mode::Benchmark => {
            let out = run_benchmark_suite(config)?;
            Ok(vec![out.summary, out.convergence])
        }
        Mode::Dtsp => {
            let out = run_dtsp_scenario(config)?;
            Ok(out.histories.into_iter().chain(out.tours).collect())
        }
        Mode::Generate => {
            let (a, b) = run_generate(config)?;
            Ok(vec![a, b])
        }
    }
}

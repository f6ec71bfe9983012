//! CSV/JSON result files and their readers.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dynamic::ScenarioResult;
use crate::error::{Error, Result};
use crate::Algorithm;

pub const SUMMARY_HEADER: &str =
    "algorithm,function,dimension,seed,final_fitness,iterations,mean_fitness,median_fitness";
pub const CONVERGENCE_HEADER: &str = "algorithm,function,dimension,seed,iteration,best_fitness";
pub const HISTORY_HEADER: &str = "iteration,algorithm,best_cost,event";

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub algorithm: Algorithm,
    pub function: String,
    pub dimension: usize,
    pub seed: u64,
    pub final_fitness: f64,
    pub iterations: usize,
}

/// Per-cell statistics; written with `seed = aggregate`.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub algorithm: Algorithm,
    pub function: String,
    pub dimension: usize,
    pub mean: f64,
    pub median: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub algorithm: Algorithm,
    pub function: String,
    pub dimension: usize,
    pub seed: u64,
    pub iteration: usize,
    pub best_fitness: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HistoryRow {
    pub iteration: u64,
    pub algorithm: Algorithm,
    pub best_cost: f64,
    pub event: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinalTour {
    pub algorithm: String,
    pub tour: Vec<String>,
    pub cost: f64,
}

pub(crate) fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

pub(crate) fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    let mut start = 0;
    while start < rows.len() {
        let head = &rows[start];
        let end = start
            + rows[start..]
                .iter()
                .take_while(|r| {
                    r.algorithm == head.algorithm
                        && r.function == head.function
                        && r.dimension == head.dimension
                })
                .count();
        let cell = &rows[start..end];
        for r in cell {
            writeln!(
                out,
                "{},{},{},{},{:e},{},,",
                r.algorithm, r.function, r.dimension, r.seed, r.final_fitness, r.iterations
            )
            .unwrap();
        }
        let fitness: Vec<f64> = cell.iter().map(|r| r.final_fitness).collect();
        let mean = fitness.iter().sum::<f64>() / fitness.len() as f64;
        writeln!(
            out,
            "{},{},{},aggregate,,,{:e},{:e}",
            head.algorithm,
            head.function,
            head.dimension,
            mean,
            median(&fitness)
        )
        .unwrap();
        start = end;
    }
    out
}

/// `(algorithm, function, dimension, seed, history)` of one run.
pub(crate) type Series<'a> = (Algorithm, &'a str, usize, u64, &'a [(usize, f64)]);

pub(crate) fn convergence_csv(series: &[Series<'_>]) -> String {
    let mut out = String::from(CONVERGENCE_HEADER);
    out.push('\n');
    for (alg, function, dim, seed, history) in series {
        for (iteration, best) in history.iter() {
            writeln!(out, "{alg},{function},{dim},{seed},{iteration},{best:e}").unwrap();
        }
    }
    out
}

pub(crate) fn history_csv(results: &[&ScenarioResult]) -> String {
    let mut out = String::from(HISTORY_HEADER);
    out.push('\n');
    for r in results {
        for p in &r.history {
            writeln!(
                out,
                "{},{},{},{}",
                p.iteration,
                r.algorithm,
                p.best_cost,
                p.events.join(";")
            )
            .unwrap();
        }
    }
    out
}

fn lines(path: &Path, header: &str) -> Result<Vec<Vec<String>>> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut it = text.lines();
    if it.next() != Some(header) {
        return Err(Error::Validation(format!(
            "{}: unexpected header",
            path.display()
        )));
    }
    Ok(it.map(|l| l.split(',').map(str::to_string).collect()).collect())
}

fn field<T: std::str::FromStr>(path: &Path, line: usize, name: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| {
        Error::Validation(format!(
            "{}: line {}: bad {name} `{value}`",
            path.display(),
            line + 2
        ))
    })
}

fn algorithm(path: &Path, line: usize, value: &str) -> Result<Algorithm> {
    value.parse().map_err(|_| {
        Error::Validation(format!(
            "{}: line {}: bad algorithm `{value}`",
            path.display(),
            line + 2
        ))
    })
}

pub fn read_summary(path: &Path) -> Result<(Vec<SummaryRow>, Vec<AggregateRow>)> {
    let mut rows = Vec::new();
    let mut aggregates = Vec::new();
    for (k, f) in lines(path, SUMMARY_HEADER)?.iter().enumerate() {
        if f.len() != 8 {
            return Err(Error::Validation(format!(
                "{}: line {}: expected 8 fields",
                path.display(),
                k + 2
            )));
        }
        if f[3] == "aggregate" {
            aggregates.push(AggregateRow {
                algorithm: algorithm(path, k, &f[0])?,
                function: f[1].clone(),
                dimension: field(path, k, "dimension", &f[2])?,
                mean: field(path, k, "mean_fitness", &f[6])?,
                median: field(path, k, "median_fitness", &f[7])?,
            });
        } else {
            rows.push(SummaryRow {
                algorithm: algorithm(path, k, &f[0])?,
                function: f[1].clone(),
                dimension: field(path, k, "dimension", &f[2])?,
                seed: field(path, k, "seed", &f[3])?,
                final_fitness: field(path, k, "final_fitness", &f[4])?,
                iterations: field(path, k, "iterations", &f[5])?,
            });
        }
    }
    Ok((rows, aggregates))
}

pub fn read_convergence(path: &Path) -> Result<Vec<ConvergenceRow>> {
    lines(path, CONVERGENCE_HEADER)?
        .iter()
        .enumerate()
        .map(|(k, f)| {
            if f.len() != 6 {
                return Err(Error::Validation(format!(
                    "{}: line {}: expected 6 fields",
                    path.display(),
                    k + 2
                )));
            }
            Ok(ConvergenceRow {
                algorithm: algorithm(path, k, &f[0])?,
                function: f[1].clone(),
                dimension: field(path, k, "dimension", &f[2])?,
                seed: field(path, k, "seed", &f[3])?,
                iteration: field(path, k, "iteration", &f[4])?,
                best_fitness: field(path, k, "best_fitness", &f[5])?,
            })
        })
        .collect()
}

pub fn read_history(path: &Path) -> Result<Vec<HistoryRow>> {
    lines(path, HISTORY_HEADER)?
        .iter()
        .enumerate()
        .map(|(k, f)| {
            if f.len() != 4 {
                return Err(Error::Validation(format!(
                    "{}: line {}: expected 4 fields",
                    path.display(),
                    k + 2
                )));
            }
            Ok(HistoryRow {
                iteration: field(path, k, "iteration", &f[0])?,
                algorithm: algorithm(path, k, &f[1])?,
                best_cost: field(path, k, "best_cost", &f[2])?,
                event: f[3].clone(),
            })
        })
        .collect()
}

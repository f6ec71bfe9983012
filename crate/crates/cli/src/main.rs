//! `osoma` experiment runner: benchmark suites, dynamic TSP scenarios and
//! synthetic instance generation. Exit codes: 0 ok, 2 invalid input,
//! 3 runtime failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use osoma_core::experiment::{
    parse_algorithms, parse_override, parse_seeds, run_experiment, ExperimentConfig, InstanceStyle, Mode,
};
use osoma_core::Error;

#[derive(Debug, Parser)]
#[command(name = "osoma", version, about = "SOMA/OSOMA, DE and PSO experiments")]
struct Cli {
    /// benchmark, dtsp or generate
    #[arg(long, default_value = "benchmark")]
    mode: String,

    /// Comma-separated subset of soma,osoma,de,pso
    #[arg(long, default_value = "soma,osoma,de,pso")]
    algorithms: String,

    /// Benchmark function(s) by id or name, comma-separated
    #[arg(long)]
    function: Option<String>,

    /// Dimension(s), comma-separated
    #[arg(long, default_value = "2")]
    dims: String,

    #[arg(long, default_value_t = 20)]
    pop: usize,

    /// Migration loops / generations (default 100, or 60 for dtsp)
    #[arg(long)]
    iters: Option<usize>,

    /// A count (`30` = seeds 0..30), a list (`1,5,9`) or a range (`3..8`)
    #[arg(long, default_value = "1")]
    seeds: String,

    #[arg(long)]
    instance: Option<PathBuf>,

    #[arg(long)]
    schedule: Option<PathBuf>,

    /// Restart from random tours after every event instead of repairing
    #[arg(long)]
    reinit_on_event: bool,

    /// Parameter override `key=value`; repeatable
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,

    #[arg(long, default_value = "results")]
    out: PathBuf,

    /// City count for generate mode
    #[arg(long, default_value_t = 11)]
    cities: usize,

    /// euclidean or random-asymmetric (generate mode)
    #[arg(long, default_value = "euclidean")]
    style: String,
}

fn split_list(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn build_config(cli: &Cli) -> Result<ExperimentConfig, Error> {
    let mode: Mode = cli.mode.parse()?;
    let mut config = ExperimentConfig::new(mode, &cli.out);
    config.algorithms = parse_algorithms(&cli.algorithms)?;
    config.functions = cli
        .function
        .as_deref()
        .map(|f| split_list(f).map(String::from).collect())
        .unwrap_or_default();
    config.dimensions = split_list(&cli.dims)
        .map(|d| {
            d.parse()
                .map_err(|_| Error::Validation(format!("--dims: `{d}` is not a positive integer")))
        })
        .collect::<Result<_, _>>()?;
    config.population_size = cli.pop;
    config.max_iterations = cli.iters;
    config.seeds = parse_seeds(&cli.seeds)?;
    config.overrides = cli
        .overrides
        .iter()
        .map(|s| parse_override(s))
        .collect::<Result<_, _>>()?;
    config.instance = cli.instance.clone();
    config.schedule = cli.schedule.clone();
    config.reinit_on_event = cli.reinit_on_event;
    config.cities = cli.cities;
    config.style = cli.style.parse::<InstanceStyle>()?;
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = build_config(&cli).and_then(|config| run_experiment(&config));
    match outcome {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 2 } else { 3 })
        }
    }
}

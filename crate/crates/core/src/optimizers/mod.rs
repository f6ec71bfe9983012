//! Continuous-space optimizers sharing one run loop.

mod de;
mod pso;
mod soma;

use std::fmt;
use std::str::FromStr;

pub use de::{de_step, DeParams};
pub use pso::{pso_step, PsoParams, Swarm};
pub use soma::{
    migration_candidate, osoma_migrate, osoma_perturbation, soma_migrate, soma_perturbation, SomaParams,
};

pub(crate) use de::pick_three;

use crate::error::{Error, Result};
use crate::population::{init_population, Objective, Population};
use crate::rng::RandomStream;
use crate::space::{RealVector, SearchSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Soma,
    Osoma,
    De,
    Pso,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Soma, Algorithm::Osoma, Algorithm::De, Algorithm::Pso];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Soma => "soma",
            Algorithm::Osoma => "osoma",
            Algorithm::De => "de",
            Algorithm::Pso => "pso",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "soma" => Ok(Algorithm::Soma),
            "osoma" => Ok(Algorithm::Osoma),
            "de" => Ok(Algorithm::De),
            "pso" => Ok(Algorithm::Pso),
            other => Err(Error::Config(format!(
                "unknown algorithm `{other}` (expected soma, osoma, de or pso)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub population_size: usize,
    pub max_iterations: usize,
    /// Stop once the best fitness is at or below this value.
    pub target_fitness: f64,
    pub soma: SomaParams,
    pub de: DeParams,
    pub pso: PsoParams,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            population_size: 20,
            max_iterations: 100,
            target_fitness: f64::NEG_INFINITY,
            soma: SomaParams::default(),
            de: DeParams::default(),
            pso: PsoParams::default(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self, algorithm: Algorithm) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::Config(format!(
                "population size {} is below the minimum of 2",
                self.population_size
            )));
        }
        if self.target_fitness.is_nan() {
            return Err(Error::Config("target fitness is NaN".into()));
        }
        match algorithm {
            Algorithm::Soma | Algorithm::Osoma => self.soma.validate(),
            Algorithm::De => {
                if self.population_size < 4 {
                    return Err(Error::Config(format!(
                        "DE needs a population of at least 4, got {}",
                        self.population_size
                    )));
                }
                self.de.validate()
            }
            Algorithm::Pso => self.pso.validate(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub best_position: RealVector,
    pub best_fitness: f64,
    /// `(iteration, best fitness so far)`, starting with iteration 0.
    pub history: Vec<(usize, f64)>,
}

impl RunResult {
    /// Number of completed iterations (migrations or generations).
    pub fn iterations(&self) -> usize {
        self.history.last().map_or(0, |&(k, _)| k)
    }
}

enum State {
    Soma(Population),
    Osoma(Population),
    De(Population),
    Pso(Population, Swarm),
}

impl State {
    fn best(&self) -> (&RealVector, f64) {
        let best = match self {
            State::Soma(p) | State::Osoma(p) | State::De(p) => p.leader(),
            State::Pso(_, swarm) => swarm.best(),
        };
        (best.position(), best.fitness())
    }
}

/// Run `algorithm` from a fresh seeded population until `max_iterations`
/// or the target fitness is reached.
pub fn run(
    algorithm: Algorithm,
    objective: &dyn Objective,
    space: &SearchSpace,
    config: &RunConfig,
    seed: u64,
) -> Result<RunResult> {
    config.validate(algorithm)?;
    Ok(run_unvalidated(algorithm, objective, space, config, seed))
}

/// [`run`] without parameter validation, for degenerate settings that are
/// only meaningful in tests (e.g. a zero-width lambda interval).
#[doc(hidden)]
pub fn run_unvalidated(
    algorithm: Algorithm,
    objective: &dyn Objective,
    space: &SearchSpace,
    config: &RunConfig,
    seed: u64,
) -> RunResult {
    let mut rng = RandomStream::new(seed);
    let pop = init_population(space, config.population_size.max(2), objective, &mut rng)
        .expect("population size checked");
    let mut state = match algorithm {
        Algorithm::Soma => State::Soma(pop),
        Algorithm::Osoma => State::Osoma(pop),
        Algorithm::De => State::De(pop),
        Algorithm::Pso => {
            let swarm = Swarm::new(&pop);
            State::Pso(pop, swarm)
        }
    };

    let mut history = vec![(0, state.best().1)];
    for iteration in 1..=config.max_iterations {
        if state.best().1 <= config.target_fitness {
            break;
        }
        match &mut state {
            State::Soma(p) => soma_migrate(p, &config.soma, space, objective, &mut rng),
            State::Osoma(p) => osoma_migrate(p, &config.soma, space, objective, &mut rng),
            State::De(p) => de_step(p, &config.de, space, objective, &mut rng),
            State::Pso(p, s) => pso_step(p, s, &config.pso, space, objective, &mut rng),
        }
        history.push((iteration, state.best().1));
    }

    let (position, fitness) = state.best();
    RunResult {
        best_position: position.clone(),
        best_fitness: fitness,
        history,
    }
}

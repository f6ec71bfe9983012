//! Event-driven DTSP simulation.
//!
//! Time is the migration-loop index. Before each migration the events due
//! at that tick are applied: a new city is cheapest-inserted into every
//! tour, and any event triggers re-evaluation of the whole population.

use crate::error::{Error, Result};
use crate::optimizers::{DeParams, PsoParams, SomaParams};
use crate::rng::RandomStream;
use crate::tsp::{DiscreteSolver, Tour, TourPopulation};
use crate::Algorithm;

use super::event::EventKind;
use super::matrix::CostSnapshot;
use super::provider::CostProvider;

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub population_size: usize,
    pub max_iterations: u64,
    pub soma: SomaParams,
    pub de: DeParams,
    pub pso: PsoParams,
    /// Start from fresh random tours after every event instead of repairing.
    pub reinit_on_event: bool,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            population_size: 20,
            max_iterations: 60,
            soma: SomaParams::default(),
            de: DeParams::default(),
            pso: PsoParams::default(),
            reinit_on_event: false,
        }
    }
}

impl SimulationConfig {
    pub fn validate(&self, algorithm: Algorithm) -> Result<()> {
        let min = if algorithm == Algorithm::De { 4 } else { 2 };
        if self.population_size < min {
            return Err(Error::Config(format!(
                "{algorithm} needs a population of at least {min}, got {}",
                self.population_size
            )));
        }
        match algorithm {
            Algorithm::Soma | Algorithm::Osoma => self.soma.validate(),
            Algorithm::De => self.de.validate(),
            Algorithm::Pso => self.pso.validate(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HistoryPoint {
    pub iteration: u64,
    pub best_cost: f64,
    /// Kinds of the events that fired at this iteration.
    pub events: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioResult {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub history: Vec<HistoryPoint>,
    pub final_tour: Tour,
    pub final_cost: f64,
}

/// Cheapest-insert `new_city` into every tour, re-evaluate, re-select the
/// leader.
pub fn repair_population(pop: &mut TourPopulation, new_city: usize, costs: &CostSnapshot) -> Result<()> {
    if !costs.cities().contains(&new_city) {
        return Err(Error::Instance(format!(
            "city {new_city} is not present at time {}",
            costs.time()
        )));
    }
    pop.insert_city(new_city, costs)
}

pub fn simulate(
    provider: &dyn CostProvider,
    algorithm: Algorithm,
    config: &SimulationConfig,
    seed: u64,
) -> Result<ScenarioResult> {
    config.validate(algorithm)?;
    let matrix = provider.matrix();
    let mut rng = RandomStream::new(seed);
    let mut costs = matrix.snapshot(0);
    if costs.cities().len() < 2 {
        return Err(Error::Validation(format!(
            "need at least 2 cities at time 0, have {}",
            costs.cities().len()
        )));
    }
    let population = TourPopulation::random(&costs, config.population_size, &mut rng)?;
    let mut solver = DiscreteSolver::new(algorithm, population)?;

    let kinds = |t: u64| {
        provider
            .pending_events(t)
            .iter()
            .map(|e| e.kind_name())
            .collect::<Vec<_>>()
    };
    let mut history = vec![HistoryPoint {
        iteration: 0,
        best_cost: solver.best().cost,
        events: kinds(0),
    }];

    for t in 1..=config.max_iterations {
        let events = provider.pending_events(t);
        if !events.is_empty() {
            costs = matrix.snapshot(t);
            if config.reinit_on_event {
                solver.reinitialize(&costs, &mut rng)?;
            } else {
                for event in events {
                    if let EventKind::AddCity { city, .. } = &event.kind {
                        let index = matrix.index_of(&city.id).ok_or_else(|| {
                            Error::Validation(format!("city `{}` was never added", city.id))
                        })?;
                        solver.insert_city(index, &costs)?;
                    }
                }
                solver.reevaluate(&costs);
            }
        }
        solver.step(&config.soma, &config.de, &config.pso, &costs, &mut rng);
        history.push(HistoryPoint {
            iteration: t,
            best_cost: solver.best().cost,
            events: kinds(t),
        });
    }

    let best = solver.best();
    Ok(ScenarioResult {
        algorithm,
        seed,
        history,
        final_tour: best.tour.clone(),
        final_cost: best.cost,
    })
}

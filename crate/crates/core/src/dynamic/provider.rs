//! Cost sources for the simulator.
//!
//! A live traffic feed would sit behind [`CostProvider`]; the shipped
//! implementations replay a schedule from files or synthesize one from
//! seeded noise.

use crate::error::{Error, Result};
use crate::rng::RandomStream;

use super::event::{EdgeUpdate, Event, EventKind, EventSchedule};
use super::matrix::DynamicCostMatrix;

pub trait CostProvider {
    /// The full cost timeline, all known events applied.
    fn matrix(&self) -> &DynamicCostMatrix;

    /// Events that fire at tick `t`.
    fn pending_events(&self, t: u64) -> &[Event];

    fn cost(&self, from: usize, to: usize, t: u64) -> Result<f64> {
        self.matrix().cost(from, to, t)
    }
}

/// Replays a fixed instance plus event schedule.
#[derive(Debug, Clone)]
pub struct ReplayProvider {
    timeline: DynamicCostMatrix,
    schedule: EventSchedule,
}

impl ReplayProvider {
    /// Applies the whole schedule up front; any inconsistency between the
    /// schedule and the instance is a validation error.
    pub fn new(initial: DynamicCostMatrix, schedule: EventSchedule) -> Result<Self> {
        let mut timeline = initial;
        for (k, event) in schedule.events().iter().enumerate() {
            timeline
                .apply_event(event)
                .map_err(|e| Error::Validation(format!("events[{k}] ({}): {e}", event.kind_name())))?;
        }
        Ok(Self { timeline, schedule })
    }

    pub fn schedule(&self) -> &EventSchedule {
        &self.schedule
    }
}

impl CostProvider for ReplayProvider {
    fn matrix(&self) -> &DynamicCostMatrix {
        &self.timeline
    }

    fn pending_events(&self, t: u64) -> &[Event] {
        self.schedule.at(t)
    }
}

/// Settings for [`SyntheticProvider`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSettings {
    /// Ticks between perturbations.
    pub period: u64,
    /// Last tick that may carry a perturbation.
    pub horizon: u64,
    /// Directed edges touched per perturbation.
    pub edges_per_update: usize,
    /// Costs are multiplied by a factor drawn from `[1 - a, 1 + a)`.
    pub amplitude: f64,
}

/// Base matrix plus seeded multiplicative noise, emitted as periodic
/// edge updates.
#[derive(Debug, Clone)]
pub struct SyntheticProvider {
    replay: ReplayProvider,
}

impl SyntheticProvider {
    pub fn new(base: DynamicCostMatrix, seed: u64, noise: NoiseSettings) -> Result<Self> {
        if noise.period == 0 || !(0.0..1.0).contains(&noise.amplitude) {
            return Err(Error::Config(format!("invalid noise settings {noise:?}")));
        }
        let mut rng = RandomStream::new(seed);
        let mut events = Vec::new();
        let mut t = noise.period;
        while t <= noise.horizon {
            let cities = base.cities_at(t);
            if cities.len() >= 2 {
                let edges = (0..noise.edges_per_update)
                    .map(|_| {
                        let i = cities[rng.index(cities.len())];
                        let mut j = cities[rng.index(cities.len())];
                        while j == i {
                            j = cities[rng.index(cities.len())];
                        }
                        let factor = rng.uniform(1.0 - noise.amplitude, 1.0 + noise.amplitude);
                        let cost = base.cost(i, j, t).expect("both present") * factor;
                        EdgeUpdate {
                            from: base.city(i).expect("known").id.clone(),
                            to: base.city(j).expect("known").id.clone(),
                            cost,
                        }
                    })
                    .collect();
                events.push(Event {
                    at: t,
                    kind: EventKind::UpdateEdges { edges },
                });
            }
            t += noise.period;
        }
        let replay = ReplayProvider::new(base, EventSchedule::new(events)?)?;
        Ok(Self { replay })
    }

    pub fn schedule(&self) -> &EventSchedule {
        self.replay.schedule()
    }
}

impl CostProvider for SyntheticProvider {
    fn matrix(&self) -> &DynamicCostMatrix {
        self.replay.matrix()
    }

    fn pending_events(&self, t: u64) -> &[Event] {
        self.replay.pending_events(t)
    }
}

//! Agents, the population they form, and leader selection.

use crate::error::{Error, Result};
use crate::rng::RandomStream;
use crate::space::{RealVector, SearchSpace};

/// Anything that maps a point to a cost. Lower is better.
pub trait Objective {
    fn evaluate(&self, x: &[f64]) -> f64;
}

impl<F: Fn(&[f64]) -> f64> Objective for F {
    fn evaluate(&self, x: &[f64]) -> f64 {
        self(x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub(crate) position: RealVector,
    pub(crate) fitness: f64,
}

impl Individual {
    pub fn evaluated(position: RealVector, objective: &dyn Objective) -> Self {
        let fitness = objective.evaluate(&position);
        Self { position, fitness }
    }

    pub fn position(&self) -> &RealVector {
        &self.position
    }

    pub fn fitness(&self) -> f64 {
        self.fitness
    }

    /// Move to `position`, recomputing fitness.
    pub fn relocate(&mut self, position: RealVector, objective: &dyn Objective) {
        self.fitness = objective.evaluate(&position);
        self.position = position;
    }

    pub(crate) fn set(&mut self, position: RealVector, fitness: f64) {
        self.position = position;
        self.fitness = fitness;
    }
}

/// Nonempty set of agents with a cached leader (minimum fitness).
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub(crate) members: Vec<Individual>,
    pub(crate) leader_index: usize,
}

impl Population {
    /// Build from already evaluated members; selects the leader.
    pub fn from_members(members: Vec<Individual>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Config("population must not be empty".into()));
        }
        let mut pop = Self {
            members,
            leader_index: 0,
        };
        pop.select_leader();
        Ok(pop)
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn leader_index(&self) -> usize {
        self.leader_index
    }

    pub fn leader(&self) -> &Individual {
        &self.members[self.leader_index]
    }

    /// Argmin of fitness, ties to the lowest index. Updates and returns the
    /// cached leader index.
    pub fn select_leader(&mut self) -> usize {
        self.leader_index = argmin(self.members.iter().map(|m| m.fitness));
        self.leader_index
    }
}

/// Index of the smallest value; first occurrence wins ties.
pub(crate) fn argmin(values: impl IntoIterator<Item = f64>) -> usize {
    let mut best = 0;
    let mut best_value = f64::INFINITY;
    for (k, v) in values.into_iter().enumerate() {
        if k == 0 || v < best_value || (best_value.is_nan() && !v.is_nan()) {
            best = k;
            best_value = v;
        }
    }
    best
}

/// Uniformly sampled, evaluated population with its leader selected.
pub fn init_population(
    space: &SearchSpace,
    size: usize,
    objective: &dyn Objective,
    rng: &mut RandomStream,
) -> Result<Population> {
    if size < 2 {
        return Err(Error::Config(format!(
            "population size {size} is below the minimum of 2"
        )));
    }
    let members = (0..size)
        .map(|_| Individual::evaluated(space.sample(rng), objective))
        .collect();
    Population::from_members(members)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }

    fn with_fitness(values: &[f64]) -> Population {
        let members = values
            .iter()
            .map(|&f| Individual {
                position: RealVector::zeros(1),
                fitness: f,
            })
            .collect();
        Population::from_members(members).unwrap()
    }

    #[test]
    fn init_respects_bounds_and_leader() {
        let space = SearchSpace::cube(2, -1.0, 1.0).unwrap();
        let mut rng = RandomStream::new(42);
        let pop = init_population(&space, 10, &sphere, &mut rng).unwrap();
        assert_eq!(pop.len(), 10);
        assert!(pop.members().iter().all(|m| space.contains(m.position())));
        let min = pop
            .members()
            .iter()
            .map(|m| m.fitness())
            .fold(f64::INFINITY, f64::min);
        assert_eq!(pop.leader().fitness(), min);
    }

    #[test]
    fn init_rejects_single_agent() {
        let space = SearchSpace::cube(2, -1.0, 1.0).unwrap();
        let mut rng = RandomStream::new(1);
        assert!(matches!(
            init_population(&space, 1, &sphere, &mut rng),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn init_is_deterministic() {
        let space = SearchSpace::cube(3, -5.0, 5.0).unwrap();
        let a = init_population(&space, 8, &sphere, &mut RandomStream::new(9)).unwrap();
        let b = init_population(&space, 8, &sphere, &mut RandomStream::new(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn leader_is_argmin() {
        assert_eq!(with_fitness(&[3.0, 1.0, 2.0]).leader_index(), 1);
    }

    #[test]
    fn leader_ties_go_to_lowest_index() {
        assert_eq!(with_fitness(&[1.0, 1.0]).leader_index(), 0);
        assert_eq!(with_fitness(&[2.0, 0.5, 0.5, 0.5]).leader_index(), 1);
    }
}

//! Global-best particle swarm baseline.

use crate::error::{Error, Result};
use crate::population::{argmin, Individual, Objective, Population};
use crate::rng::RandomStream;
use crate::space::SearchSpace;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsoParams {
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            inertia: 0.729,
            cognitive: 1.49445,
            social: 1.49445,
        }
    }
}

impl PsoParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.inertia >= 0.0 && self.cognitive >= 0.0 && self.social >= 0.0) {
            return Err(Error::Config(format!(
                "PSO coefficients must be non-negative: {self:?}"
            )));
        }
        Ok(())
    }
}

/// Per-particle velocities and personal bests, plus the swarm best.
#[derive(Debug, Clone, PartialEq)]
pub struct Swarm {
    velocities: Vec<Vec<f64>>,
    personal_best: Vec<Individual>,
    global_best: usize,
}

impl Swarm {
    /// Zero velocities; personal bests start at the current positions.
    pub fn new(pop: &Population) -> Self {
        let dim = pop.leader().position.dim();
        Self {
            velocities: vec![vec![0.0; dim]; pop.len()],
            personal_best: pop.members.clone(),
            global_best: pop.leader_index,
        }
    }

    pub fn velocities(&self) -> &[Vec<f64>] {
        &self.velocities
    }

    pub fn best(&self) -> &Individual {
        &self.personal_best[self.global_best]
    }
}

/// One synchronous swarm update. Velocity is clamped to the box width.
pub fn pso_step(
    pop: &mut Population,
    swarm: &mut Swarm,
    params: &PsoParams,
    space: &SearchSpace,
    objective: &dyn Objective,
    rng: &mut RandomStream,
) {
    let dim = space.dim();
    let social_best = swarm.best().position.clone();
    for (i, member) in pop.members.iter_mut().enumerate() {
        let velocity = &mut swarm.velocities[i];
        let own_best = &swarm.personal_best[i].position;
        let mut position = member.position.clone();
        let x = position.as_mut_slice();
        for k in 0..dim {
            let (r1, r2) = (rng.unit(), rng.unit());
            let vmax = space.upper()[k] - space.lower()[k];
            let v = params.inertia * velocity[k]
                + params.cognitive * r1 * (own_best[k] - x[k])
                + params.social * r2 * (social_best[k] - x[k]);
            velocity[k] = v.clamp(-vmax, vmax);
            x[k] += velocity[k];
        }
        space.confine_in_place(x, rng);
        member.relocate(position, objective);
        if member.fitness < swarm.personal_best[i].fitness {
            swarm.personal_best[i] = member.clone();
        }
    }
    swarm.global_best = argmin(swarm.personal_best.iter().map(|m| m.fitness));
    pop.select_leader();
}

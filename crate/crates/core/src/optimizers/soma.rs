//! All-to-One migration for SOMA and its opportunistic variant.
//!
//! Both variants move every non-leader along the line toward the frozen
//! leader, sampling candidates at `L = step, 2*step, .., path_length`:
//!
//! ```text
//! x_next = x + (x_leader - x) * phi * L
//! ```
//!
//! They differ only in how the perturbation vector `phi` is drawn. SOMA
//! uses a binary mask (`1` with probability `pr`, else `0`), so a dimension
//! can stay frozen for a whole migration. OSOMA replaces the `0` branch with
//! `lambda / dim`, `lambda ~ U(lambda_low, lambda_high)`, so every dimension
//! moves at least a little toward the leader.

use crate::error::{Error, Result};
use crate::population::{Objective, Population};
use crate::rng::RandomStream;
use crate::space::{RealVector, SearchSpace};

/// Migration parameters shared by SOMA and OSOMA.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SomaParams {
    /// Largest multiple of the leader gap a candidate may travel.
    pub path_length: f64,
    /// Increment between consecutive path samples.
    pub step: f64,
    /// Perturbation probability.
    pub pr: f64,
    pub lambda_low: f64,
    pub lambda_high: f64,
}

impl Default for SomaParams {
    fn default() -> Self {
        Self {
            path_length: 3.0,
            step: 0.11,
            pr: 0.1,
            lambda_low: 0.60,
            lambda_high: 0.85,
        }
    }
}

impl SomaParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step <= self.path_length && self.path_length.is_finite()) {
            return Err(Error::Config(format!(
                "need 0 < step <= path_length, got step {} and path_length {}",
                self.step, self.path_length
            )));
        }
        if !(0.0..=1.0).contains(&self.pr) {
            return Err(Error::Config(format!("pr {} outside [0, 1]", self.pr)));
        }
        if !(0.0 < self.lambda_low && self.lambda_low < self.lambda_high && self.lambda_high < 1.0) {
            return Err(Error::Config(format!(
                "need 0 < lambda_low < lambda_high < 1, got ({}, {})",
                self.lambda_low, self.lambda_high
            )));
        }
        Ok(())
    }

    /// Number of samples on the path grid.
    pub fn path_steps(&self) -> usize {
        (self.path_length / self.step + 1e-9).floor() as usize
    }

    /// Path values `step, 2*step, .., <= path_length`.
    pub fn path_values(&self) -> impl Iterator<Item = f64> + '_ {
        (1..=self.path_steps()).map(move |k| k as f64 * self.step)
    }
}

/// Binary perturbation mask: each component is `1` when a fresh
/// `U(0,1)` draw falls below `pr`, else `0`.
pub fn soma_perturbation(dim: usize, params: &SomaParams, rng: &mut RandomStream) -> RealVector {
    let phi = (0..dim)
        .map(|_| if rng.unit() < params.pr { 1.0 } else { 0.0 })
        .collect();
    RealVector::new(phi).expect("mask components are finite and dim >= 1")
}

/// Opportunistic perturbation: `1` when the draw falls below `pr`, else
/// `lambda / dim` with a fresh `lambda` per component. Never zero under
/// valid parameters.
pub fn osoma_perturbation(dim: usize, params: &SomaParams, rng: &mut RandomStream) -> RealVector {
    let scale = dim as f64;
    let phi = (0..dim)
        .map(|_| {
            if rng.unit() < params.pr {
                1.0
            } else {
                rng.uniform(params.lambda_low, params.lambda_high) / scale
            }
        })
        .collect();
    RealVector::new(phi).expect("perturbation components are finite and dim >= 1")
}

/// One point on the migration path: `x + (leader - x) * phi * path_value`.
pub fn migration_candidate(x: &[f64], leader: &[f64], phi: &[f64], path_value: f64) -> Vec<f64> {
    x.iter()
        .zip(leader)
        .zip(phi)
        .map(|((&xi, &li), &p)| xi + (li - xi) * p * path_value)
        .collect()
}

pub(crate) fn migrate_with<P>(
    pop: &mut Population,
    params: &SomaParams,
    space: &SearchSpace,
    objective: &dyn Objective,
    rng: &mut RandomStream,
    perturb: P,
) where
    P: Fn(usize, &SomaParams, &mut RandomStream) -> RealVector,
{
    let leader_index = pop.leader_index;
    let leader = pop.members[leader_index].position.clone();
    let dim = leader.dim();

    for i in 0..pop.members.len() {
        if i == leader_index {
            continue;
        }
        let phi = perturb(dim, params, rng);
        let member = &pop.members[i];
        let mut best: Option<(Vec<f64>, f64)> = None;
        for path_value in params.path_values() {
            let mut candidate = migration_candidate(&member.position, &leader, &phi, path_value);
            space.confine_in_place(&mut candidate, rng);
            let fitness = objective.evaluate(&candidate);
            if best.as_ref().is_none_or(|(_, f)| fitness < *f) {
                best = Some((candidate, fitness));
            }
        }
        if let Some((position, fitness)) = best {
            if fitness < pop.members[i].fitness {
                let position = RealVector::new(position).expect("confined candidates are finite");
                pop.members[i].set(position, fitness);
            }
        }
    }
    pop.select_leader();
}

/// One All-to-One migration loop with the binary SOMA mask.
pub fn soma_migrate(
    pop: &mut Population,
    params: &SomaParams,
    space: &SearchSpace,
    objective: &dyn Objective,
    rng: &mut RandomStream,
) {
    migrate_with(pop, params, space, objective, rng, soma_perturbation);
}

/// One All-to-One migration loop with the opportunistic mask.
pub fn osoma_migrate(
    pop: &mut Population,
    params: &SomaParams,
    space: &SearchSpace,
    objective: &dyn Objective,
    rng: &mut RandomStream,
) {
    migrate_with(pop, params, space, objective, rng, osoma_perturbation);
}

//! DE/rand/1/bin baseline with greedy one-to-one replacement.

use crate::error::{Error, Result};
use crate::population::{Individual, Objective, Population};
use crate::rng::RandomStream;
use crate::space::{RealVector, SearchSpace};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeParams {
    /// Differential weight.
    pub f: f64,
    /// Crossover rate.
    pub cr: f64,
}

impl Default for DeParams {
    fn default() -> Self {
        Self { f: 0.5, cr: 0.9 }
    }
}

impl DeParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.f > 0.0 && self.f <= 2.0) {
            return Err(Error::Config(format!("DE weight f = {} outside (0, 2]", self.f)));
        }
        if !(0.0..=1.0).contains(&self.cr) {
            return Err(Error::Config(format!(
                "DE crossover rate {} outside [0, 1]",
                self.cr
            )));
        }
        Ok(())
    }
}

/// Three distinct indices, all different from `exclude`.
pub(crate) fn pick_three(n: usize, exclude: usize, rng: &mut RandomStream) -> [usize; 3] {
    let mut picked = [usize::MAX; 3];
    let mut k = 0;
    while k < 3 {
        let r = rng.index(n);
        if r != exclude && !picked[..k].contains(&r) {
            picked[k] = r;
            k += 1;
        }
    }
    picked
}

/// One generation. Trials are built from the current generation and replace
/// their target when not worse. Needs at least four members.
pub fn de_step(
    pop: &mut Population,
    params: &DeParams,
    space: &SearchSpace,
    objective: &dyn Objective,
    rng: &mut RandomStream,
) {
    let n = pop.members.len();
    assert!(n >= 4, "DE/rand/1 needs at least 4 members");
    let dim = space.dim();

    let mut next: Vec<Individual> = Vec::with_capacity(n);
    for i in 0..n {
        let [r1, r2, r3] = pick_three(n, i, rng);
        let (a, b, c) = (
            &pop.members[r1].position,
            &pop.members[r2].position,
            &pop.members[r3].position,
        );
        let target = &pop.members[i];
        let forced = rng.index(dim);
        let mut trial: Vec<f64> = (0..dim)
            .map(|k| {
                if k == forced || rng.unit() < params.cr {
                    a[k] + params.f * (b[k] - c[k])
                } else {
                    target.position[k]
                }
            })
            .collect();
        space.confine_in_place(&mut trial, rng);
        let fitness = objective.evaluate(&trial);
        if fitness <= target.fitness {
            let position = RealVector::new(trial).expect("confined trial is finite");
            next.push(Individual { position, fitness });
        } else {
            next.push(target.clone());
        }
    }
    pop.members = next;
    pop.select_leader();
}

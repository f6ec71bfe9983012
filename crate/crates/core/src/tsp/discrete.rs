//! Discrete migration on tours.
//!
//! The continuous update `x + (x_L - x) * phi * L` becomes
//! `x ⊕ (x_L - x) * phi * L`: the swap sequence from `x` to the leader is
//! computed, and each of its operators joins the candidate independently
//! with probability `min(1, phi_k * L)`. Kept operators are applied in
//! their original order. DE and PSO reuse the same machinery: differences
//! are swap sequences and scaling keeps each operator with the scale as
//! its probability.

use crate::dynamic::CostSnapshot;
use crate::error::{Error, Result};
use crate::optimizers::{pick_three, DeParams, PsoParams, SomaParams};
use crate::population::argmin;
use crate::rng::RandomStream;
use crate::Algorithm;

use super::swap::subtract_unchecked;
use super::{cheapest_insertion, SwapSequence, Tour};

#[derive(Debug, Clone, PartialEq)]
pub struct TourIndividual {
    pub tour: Tour,
    pub cost: f64,
}

impl TourIndividual {
    pub fn evaluated(tour: Tour, costs: &CostSnapshot) -> Self {
        let cost = costs.tour_cost(&tour);
        Self { tour, cost }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TourPopulation {
    members: Vec<TourIndividual>,
    leader_index: usize,
}

impl TourPopulation {
    pub fn new(members: Vec<TourIndividual>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Config("tour population must not be empty".into()));
        }
        let mut pop = Self {
            members,
            leader_index: 0,
        };
        pop.select_leader();
        Ok(pop)
    }

    /// `size` uniformly shuffled tours over the cities present in `costs`.
    pub fn random(costs: &CostSnapshot, size: usize, rng: &mut RandomStream) -> Result<Self> {
        if size < 2 {
            return Err(Error::Config(format!(
                "population size {size} is below the minimum of 2"
            )));
        }
        let members = (0..size)
            .map(|_| {
                let mut order = costs.cities().to_vec();
                rng.shuffle(&mut order);
                TourIndividual::evaluated(Tour::from_vec_unchecked(order), costs)
            })
            .collect();
        Self::new(members)
    }

    pub fn members(&self) -> &[TourIndividual] {
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

    pub fn leader(&self) -> &TourIndividual {
        &self.members[self.leader_index]
    }

    pub fn select_leader(&mut self) -> usize {
        self.leader_index = argmin(self.members.iter().map(|m| m.cost));
        self.leader_index
    }

    /// Recompute every cost against `costs` and re-select the leader.
    pub fn reevaluate(&mut self, costs: &CostSnapshot) {
        for m in &mut self.members {
            m.cost = costs.tour_cost(&m.tour);
        }
        self.select_leader();
    }

    /// Cheapest-insert `city` into every tour, then re-evaluate.
    pub fn insert_city(&mut self, city: usize, costs: &CostSnapshot) -> Result<()> {
        if let Some(k) = self.members.iter().position(|m| m.tour.contains(city)) {
            return Err(Error::Consistency(format!(
                "city {city} already in tour of member {k}"
            )));
        }
        for m in &mut self.members {
            m.tour = cheapest_insertion(&m.tour, city, costs);
        }
        self.reevaluate(costs);
        Ok(())
    }
}

/// Keep each operator with probability `min(1, p)`.
fn scale(seq: &SwapSequence, p: f64, rng: &mut RandomStream) -> SwapSequence {
    SwapSequence(
        seq.0
            .iter()
            .copied()
            .filter(|_| rng.unit() < p.min(1.0))
            .collect(),
    )
}

fn apply_all(tour: &Tour, seq: &SwapSequence) -> Tour {
    let mut out = tour.clone();
    for &op in seq.ops() {
        out.swap_in_place(op);
    }
    out
}

fn binary_factor(_cities: usize, params: &SomaParams, rng: &mut RandomStream) -> f64 {
    if rng.unit() < params.pr {
        1.0
    } else {
        0.0
    }
}

fn opportunistic_factor(cities: usize, params: &SomaParams, rng: &mut RandomStream) -> f64 {
    if rng.unit() < params.pr {
        1.0
    } else {
        rng.uniform(params.lambda_low, params.lambda_high) / cities as f64
    }
}

fn migrate_tours<F>(
    pop: &mut TourPopulation,
    params: &SomaParams,
    costs: &CostSnapshot,
    rng: &mut RandomStream,
    factor: F,
) where
    F: Fn(usize, &SomaParams, &mut RandomStream) -> f64,
{
    let leader_index = pop.leader_index;
    let leader = pop.members[leader_index].tour.clone();
    let cities = leader.len();

    for i in 0..pop.members.len() {
        if i == leader_index {
            continue;
        }
        let current = &pop.members[i];
        let seq = subtract_unchecked(leader.as_slice(), current.tour.as_slice());
        if seq.is_empty() {
            continue;
        }
        let phi: Vec<f64> = (0..seq.len()).map(|_| factor(cities, params, rng)).collect();
        let mut best: Option<TourIndividual> = None;
        for path_value in params.path_values() {
            let mut candidate = current.tour.clone();
            for (op, &p) in seq.ops().iter().zip(&phi) {
                if rng.unit() < (p * path_value).min(1.0) {
                    candidate.swap_in_place(*op);
                }
            }
            let cost = costs.tour_cost(&candidate);
            if best.as_ref().is_none_or(|b| cost < b.cost) {
                best = Some(TourIndividual {
                    tour: candidate,
                    cost,
                });
            }
        }
        if let Some(b) = best {
            if b.cost < pop.members[i].cost {
                pop.members[i] = b;
            }
        }
    }
    pop.select_leader();
}

/// One migration loop with opportunistic pick factors
/// (`1` or `lambda / cities` per operator).
pub fn discrete_osoma_migrate(
    pop: &mut TourPopulation,
    params: &SomaParams,
    costs: &CostSnapshot,
    rng: &mut RandomStream,
) {
    migrate_tours(pop, params, costs, rng, opportunistic_factor);
}

/// One migration loop with binary pick factors.
pub fn discrete_soma_migrate(
    pop: &mut TourPopulation,
    params: &SomaParams,
    costs: &CostSnapshot,
    rng: &mut RandomStream,
) {
    migrate_tours(pop, params, costs, rng, binary_factor);
}

/// One generation of swap-sequence DE: the mutant is
/// `x_r1 ⊕ f * (x_r2 - x_r3)`, the trial is `x ⊕ cr * (mutant - x)`, and
/// the trial replaces `x` when not worse.
pub fn discrete_de_step(
    pop: &mut TourPopulation,
    params: &DeParams,
    costs: &CostSnapshot,
    rng: &mut RandomStream,
) {
    let n = pop.members.len();
    assert!(n >= 4, "DE needs at least 4 members");
    let mut next = Vec::with_capacity(n);
    for i in 0..n {
        let [r1, r2, r3] = pick_three(n, i, rng);
        let diff = subtract_unchecked(pop.members[r2].tour.as_slice(), pop.members[r3].tour.as_slice());
        let mutant = apply_all(&pop.members[r1].tour, &scale(&diff, params.f, rng));
        let target = &pop.members[i];
        let toward = subtract_unchecked(mutant.as_slice(), target.tour.as_slice());
        let trial =
            TourIndividual::evaluated(apply_all(&target.tour, &scale(&toward, params.cr, rng)), costs);
        next.push(if trial.cost <= target.cost {
            trial
        } else {
            target.clone()
        });
    }
    pop.members = next;
    pop.select_leader();
}

/// Velocities and personal bests for swap-sequence PSO.
#[derive(Debug, Clone, PartialEq)]
pub struct TourSwarm {
    velocities: Vec<SwapSequence>,
    personal_best: Vec<TourIndividual>,
    global_best: usize,
}

impl TourSwarm {
    pub fn new(pop: &TourPopulation) -> Self {
        Self {
            velocities: vec![SwapSequence::default(); pop.len()],
            personal_best: pop.members.clone(),
            global_best: pop.leader_index,
        }
    }

    pub fn best(&self) -> &TourIndividual {
        &self.personal_best[self.global_best]
    }

    fn reevaluate(&mut self, costs: &CostSnapshot) {
        for m in &mut self.personal_best {
            m.cost = costs.tour_cost(&m.tour);
        }
        self.global_best = argmin(self.personal_best.iter().map(|m| m.cost));
    }

    fn insert_city(&mut self, city: usize, costs: &CostSnapshot) {
        for m in &mut self.personal_best {
            m.tour = cheapest_insertion(&m.tour, city, costs);
        }
        for v in &mut self.velocities {
            v.0.clear();
        }
        self.reevaluate(costs);
    }
}

/// One swap-sequence PSO update:
/// `v = w*v ++ c1*r1*(pbest - x) ++ c2*r2*(gbest - x)`, `x = x ⊕ v`.
/// The stored velocity is the canonical sequence from old to new position.
pub fn discrete_pso_step(
    pop: &mut TourPopulation,
    swarm: &mut TourSwarm,
    params: &PsoParams,
    costs: &CostSnapshot,
    rng: &mut RandomStream,
) {
    let global = swarm.best().tour.clone();
    for i in 0..pop.members.len() {
        let x = pop.members[i].tour.clone();
        let (r1, r2) = (rng.unit(), rng.unit());
        let mut v = scale(&swarm.velocities[i], params.inertia, rng);
        let own = subtract_unchecked(swarm.personal_best[i].tour.as_slice(), x.as_slice());
        v.0.extend(scale(&own, params.cognitive * r1, rng).0);
        let social = subtract_unchecked(global.as_slice(), x.as_slice());
        v.0.extend(scale(&social, params.social * r2, rng).0);

        let moved = apply_all(&x, &v);
        swarm.velocities[i] = subtract_unchecked(moved.as_slice(), x.as_slice());
        pop.members[i] = TourIndividual::evaluated(moved, costs);
        if pop.members[i].cost < swarm.personal_best[i].cost {
            swarm.personal_best[i] = pop.members[i].clone();
        }
    }
    swarm.global_best = argmin(swarm.personal_best.iter().map(|m| m.cost));
    pop.select_leader();
}

/// One discrete optimizer instance with its population and memory.
#[derive(Debug, Clone)]
pub struct DiscreteSolver {
    algorithm: Algorithm,
    population: TourPopulation,
    swarm: Option<TourSwarm>,
}

impl DiscreteSolver {
    pub fn new(algorithm: Algorithm, population: TourPopulation) -> Result<Self> {
        if algorithm == Algorithm::De && population.len() < 4 {
            return Err(Error::Config(format!(
                "DE needs a population of at least 4, got {}",
                population.len()
            )));
        }
        let swarm = (algorithm == Algorithm::Pso).then(|| TourSwarm::new(&population));
        Ok(Self {
            algorithm,
            population,
            swarm,
        })
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn population(&self) -> &TourPopulation {
        &self.population
    }

    /// Best tour found so far (swarm memory for PSO, the leader otherwise).
    pub fn best(&self) -> &TourIndividual {
        match &self.swarm {
            Some(s) => s.best(),
            None => self.population.leader(),
        }
    }

    pub fn step(
        &mut self,
        soma: &SomaParams,
        de: &DeParams,
        pso: &PsoParams,
        costs: &CostSnapshot,
        rng: &mut RandomStream,
    ) {
        match self.algorithm {
            Algorithm::Soma => discrete_soma_migrate(&mut self.population, soma, costs, rng),
            Algorithm::Osoma => discrete_osoma_migrate(&mut self.population, soma, costs, rng),
            Algorithm::De => discrete_de_step(&mut self.population, de, costs, rng),
            Algorithm::Pso => {
                let swarm = self.swarm.as_mut().expect("PSO solver owns a swarm");
                discrete_pso_step(&mut self.population, swarm, pso, costs, rng)
            }
        }
    }

    pub fn reevaluate(&mut self, costs: &CostSnapshot) {
        self.population.reevaluate(costs);
        if let Some(s) = &mut self.swarm {
            s.reevaluate(costs);
        }
    }

    pub fn insert_city(&mut self, city: usize, costs: &CostSnapshot) -> Result<()> {
        self.population.insert_city(city, costs)?;
        if let Some(s) = &mut self.swarm {
            s.insert_city(city, costs);
        }
        Ok(())
    }

    /// Throw the population away and start over from random tours.
    pub fn reinitialize(&mut self, costs: &CostSnapshot, rng: &mut RandomStream) -> Result<()> {
        let population = TourPopulation::random(costs, self.population.len(), rng)?;
        *self = Self::new(self.algorithm, population)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tsp::brute_force_snapshot;
    use crate::tsp::tests::matrix;

    fn random_instance(n: usize, seed: u64) -> CostSnapshot {
        let mut rng = RandomStream::new(seed);
        let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.unit(), rng.unit())).collect();
        let c = pts
            .iter()
            .map(|a| {
                pts.iter()
                    .map(|b| ((a.0 - b.0).hypot(a.1 - b.1) * 1e5).round())
                    .collect()
            })
            .collect();
        matrix(c).snapshot(0)
    }

    fn member(order: &[usize], costs: &CostSnapshot) -> TourIndividual {
        TourIndividual::evaluated(Tour::new(order.to_vec()).unwrap(), costs)
    }

    #[test]
    fn follower_equal_to_leader_stays() {
        let costs = random_instance(6, 1);
        let a = member(&[0, 1, 2, 3, 4, 5], &costs);
        let mut pop = TourPopulation::new(vec![a.clone(), a]).unwrap();
        let before = pop.clone();
        discrete_osoma_migrate(
            &mut pop,
            &SomaParams::default(),
            &costs,
            &mut RandomStream::new(0),
        );
        assert_eq!(pop, before);
    }

    #[test]
    fn certain_picks_reproduce_the_leader() {
        // pr = 1 gives phi = 1 for every operator, so at L >= 1 every swap is
        // kept and the candidate equals the leader.
        let costs = random_instance(8, 2);
        let (opt, _) = brute_force_snapshot(&costs).unwrap();
        let leader = TourIndividual::evaluated(opt.clone(), &costs);
        let follower = member(&[7, 6, 5, 4, 3, 2, 1, 0], &costs);
        assert!(follower.cost > leader.cost);
        let mut pop = TourPopulation::new(vec![leader, follower]).unwrap();
        let params = SomaParams {
            pr: 1.0,
            path_length: 1.0,
            step: 1.0,
            ..SomaParams::default()
        };
        discrete_osoma_migrate(&mut pop, &params, &costs, &mut RandomStream::new(3));
        assert_eq!(pop.members()[1].tour, opt);
    }

    #[test]
    fn candidates_stay_valid_and_leader_cost_is_monotone() {
        let costs = random_instance(9, 5);
        for alg in Algorithm::ALL {
            let mut rng = RandomStream::new(11);
            let pop = TourPopulation::random(&costs, 12, &mut rng).unwrap();
            let mut solver = DiscreteSolver::new(alg, pop).unwrap();
            let mut last = solver.best().cost;
            for _ in 0..30 {
                solver.step(
                    &SomaParams::default(),
                    &DeParams::default(),
                    &PsoParams::default(),
                    &costs,
                    &mut rng,
                );
                assert!(solver.best().cost <= last, "{alg}");
                last = solver.best().cost;
                for m in solver.population().members() {
                    assert_eq!(m.tour.city_set(), costs.cities());
                    assert_eq!(m.cost, costs.tour_cost(&m.tour));
                }
            }
        }
    }

    #[test]
    fn insertion_rejects_present_city() {
        let costs = random_instance(5, 1);
        let mut pop = TourPopulation::random(&costs, 3, &mut RandomStream::new(0)).unwrap();
        assert!(matches!(pop.insert_city(2, &costs), Err(Error::Consistency(_))));
    }

    #[test]
    fn de_needs_four() {
        let costs = random_instance(5, 1);
        let pop = TourPopulation::random(&costs, 3, &mut RandomStream::new(0)).unwrap();
        assert!(DiscreteSolver::new(Algorithm::De, pop).is_err());
    }
}

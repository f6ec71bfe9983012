//! Permutation tours, swap-operator algebra and discrete migration.
//!
//! A tour is an ordered list of city indices read as a closed cycle. A swap
//! operator `MO(i, j)` exchanges the cities at two positions; a swap
//! sequence is an ordered list of them. `target - source` is the sequence
//! that turns `source` into `target`. Positions print 1-based (`MO(1,3)`)
//! but are stored 0-based.

mod brute;
mod discrete;
mod swap;

pub use brute::{brute_force_optimum, brute_force_snapshot, MAX_BRUTE_FORCE_CITIES};
pub use discrete::{
    discrete_de_step, discrete_osoma_migrate, discrete_pso_step, discrete_soma_migrate, DiscreteSolver,
    TourIndividual, TourPopulation, TourSwarm,
};
pub use swap::{apply, subtract, SwapOperator, SwapSequence, Tour};

use crate::dynamic::{CostSnapshot, DynamicCostMatrix};
use crate::error::Result;

/// Closed-cycle cost of `tour` under the matrix as it stands at time `t`.
/// Every lookup is checked; a city absent at `t` is an instance error.
pub fn tour_cost(tour: &Tour, costs: &DynamicCostMatrix, t: u64) -> Result<f64> {
    let order = tour.as_slice();
    let n = order.len();
    if n < 2 {
        return Ok(0.0);
    }
    let mut total = 0.0;
    for k in 0..n {
        total += costs.cost(order[k], order[(k + 1) % n], t)?;
    }
    Ok(total)
}

/// Insert `city` where it adds the least cycle cost. Ties go to the
/// earliest position.
pub fn cheapest_insertion(tour: &Tour, city: usize, costs: &CostSnapshot) -> Tour {
    let order = tour.as_slice();
    let n = order.len();
    let mut out = order.to_vec();
    if n < 2 {
        out.push(city);
        return Tour::from_vec_unchecked(out);
    }
    let mut best_pos = 0;
    let mut best_delta = f64::INFINITY;
    for k in 0..n {
        let (a, b) = (order[k], order[(k + 1) % n]);
        let delta = costs.cost(a, city) + costs.cost(city, b) - costs.cost(a, b);
        if delta < best_delta {
            best_delta = delta;
            best_pos = k + 1;
        }
    }
    out.insert(best_pos, city);
    Tour::from_vec_unchecked(out)
}

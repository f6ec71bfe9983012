use crate::dynamic::{CostSnapshot, DynamicCostMatrix};
use crate::error::{Error, Result};

use super::Tour;

pub const MAX_BRUTE_FORCE_CITIES: usize = 12;

/// Exact minimum-cost tour of the cities present at `t`.
///
/// The lowest city index stays first; the rest are enumerated depth-first in
/// ascending order with partial-cost pruning. Among equal-cost tours the
/// lexicographically smallest wins.
pub fn brute_force_optimum(costs: &DynamicCostMatrix, t: u64) -> Result<(Tour, f64)> {
    brute_force_snapshot(&costs.snapshot(t))
}

pub fn brute_force_snapshot(costs: &CostSnapshot) -> Result<(Tour, f64)> {
    let cities = costs.cities().to_vec();
    let n = cities.len();
    if n > MAX_BRUTE_FORCE_CITIES {
        return Err(Error::Budget(format!(
            "{n} cities exceeds the brute-force limit of {MAX_BRUTE_FORCE_CITIES}"
        )));
    }
    if n < 2 {
        return Err(Error::Instance(format!("need at least 2 cities, have {n}")));
    }

    struct Search<'a> {
        costs: &'a CostSnapshot,
        first: usize,
        path: Vec<usize>,
        used: Vec<bool>,
        rest: Vec<usize>,
        best: Vec<usize>,
        best_cost: f64,
    }

    impl Search<'_> {
        fn descend(&mut self, partial: f64) {
            if partial >= self.best_cost {
                return;
            }
            let last = *self.path.last().expect("path starts with the first city");
            if self.path.len() == self.rest.len() + 1 {
                let total = partial + self.costs.cost(last, self.first);
                if total < self.best_cost {
                    self.best_cost = total;
                    self.best.clone_from(&self.path);
                }
                return;
            }
            for k in 0..self.rest.len() {
                if self.used[k] {
                    continue;
                }
                let next = self.rest[k];
                self.used[k] = true;
                self.path.push(next);
                self.descend(partial + self.costs.cost(last, next));
                self.path.pop();
                self.used[k] = false;
            }
        }
    }

    let first = cities[0];
    let rest = cities[1..].to_vec();
    let mut search = Search {
        costs,
        first,
        path: vec![first],
        used: vec![false; rest.len()],
        rest,
        best: Vec::new(),
        best_cost: f64::INFINITY,
    };
    search.descend(0.0);
    Ok((Tour::from_vec_unchecked(search.best), search.best_cost))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RandomStream;
    use crate::tsp::tests::matrix;
    use crate::tsp::tour_cost;

    /// Held-Karp dynamic program over subsets, start fixed at city 0.
    fn held_karp(c: &[Vec<f64>]) -> f64 {
        let n = c.len();
        let full = 1usize << (n - 1);
        let mut dp = vec![vec![f64::INFINITY; n]; full];
        for j in 1..n {
            dp[1 << (j - 1)][j] = c[0][j];
        }
        for mask in 1..full {
            for j in 1..n {
                if mask & (1 << (j - 1)) == 0 || !dp[mask][j].is_finite() {
                    continue;
                }
                for k in 1..n {
                    if mask & (1 << (k - 1)) != 0 {
                        continue;
                    }
                    let next = mask | (1 << (k - 1));
                    let v = dp[mask][j] + c[j][k];
                    if v < dp[next][k] {
                        dp[next][k] = v;
                    }
                }
            }
        }
        (1..n)
            .map(|j| dp[full - 1][j] + c[j][0])
            .fold(f64::INFINITY, f64::min)
    }

    fn random_costs(n: usize, seed: u64) -> Vec<Vec<f64>> {
        let mut rng = RandomStream::new(seed);
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            0.0
                        } else {
                            rng.uniform(1.0, 100.0).round()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn triangle_is_its_perimeter() {
        let m = matrix(vec![
            vec![0.0, 3.0, 4.0],
            vec![3.0, 0.0, 5.0],
            vec![4.0, 5.0, 0.0],
        ]);
        let (tour, cost) = brute_force_optimum(&m, 0).unwrap();
        assert_eq!(cost, 12.0);
        assert_eq!(tour.as_slice(), &[0, 1, 2]);
    }

    #[test]
    fn unit_square_perimeter() {
        let pts = [(0.0f64, 0.0f64), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)];
        let c = pts
            .iter()
            .map(|a| {
                pts.iter()
                    .map(|b| ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt())
                    .collect()
            })
            .collect();
        let (tour, cost) = brute_force_optimum(&matrix(c), 0).unwrap();
        assert_eq!(cost, 4.0);
        assert_eq!(tour.as_slice(), &[0, 2, 1, 3]);
    }

    #[test]
    fn agrees_with_held_karp() {
        for seed in 0..10 {
            let c = random_costs(8, seed);
            let m = matrix(c.clone());
            let (tour, cost) = brute_force_optimum(&m, 0).unwrap();
            assert!((cost - held_karp(&c)).abs() < 1e-9, "seed {seed}");
            assert_eq!(tour_cost(&tour, &m, 0).unwrap(), cost);
        }
    }

    #[test]
    fn refuses_large_instances() {
        let m = matrix(random_costs(13, 1));
        assert!(matches!(brute_force_optimum(&m, 0), Err(Error::Budget(_))));
    }
}

//! Synthetic instances and schedules for `--mode generate`.

use crate::dynamic::io::InstanceFile;
use crate::dynamic::{City, EdgeUpdate, Event, EventKind, EventSchedule};
use crate::error::{Error, Result};
use crate::rng::RandomStream;

use super::config::InstanceStyle;

const SCALE: f64 = 1e5;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedScenario {
    pub instance: InstanceFile,
    pub schedule: EventSchedule,
}

fn city(k: usize) -> City {
    City::new(format!("c{k:02}"), format!("City {k}"))
}

/// Integer-valued costs (scaled by 1e5) for `n` cities.
fn costs(n: usize, style: InstanceStyle, rng: &mut RandomStream) -> Vec<Vec<f64>> {
    let mut m = vec![vec![0.0; n]; n];
    match style {
        InstanceStyle::Euclidean => {
            let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.unit(), rng.unit())).collect();
            for i in 0..n {
                for j in i + 1..n {
                    let d = ((pts[i].0 - pts[j].0).powi(2) + (pts[i].1 - pts[j].1).powi(2)).sqrt();
                    let c = (d * SCALE).round().max(1.0);
                    m[i][j] = c;
                    m[j][i] = c;
                }
            }
        }
        InstanceStyle::RandomAsymmetric => {
            for (i, row) in m.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    if i != j {
                        *v = (rng.uniform(0.05, 1.0) * SCALE).round();
                    }
                }
            }
        }
    }
    m
}

fn check_count(n: usize) -> Result<()> {
    if (3..=64).contains(&n) {
        Ok(())
    } else {
        Err(Error::Validation(format!("city count {n} outside 3..=64")))
    }
}

/// A static instance: points in the unit square (symmetric) or i.i.d.
/// directed costs.
pub fn generate_instance(n: usize, seed: u64, style: InstanceStyle) -> Result<InstanceFile> {
    check_count(n)?;
    let mut rng = RandomStream::new(seed);
    Ok(InstanceFile {
        cities: (0..n).map(city).collect(),
        costs: costs(n, style, &mut rng),
        directed: style == InstanceStyle::RandomAsymmetric,
    })
}

/// `n` initial cities, one more added at `add_at`, and a batch rescaling
/// roughly a quarter of the edges by a factor in [0.5, 1.5] at `update_at`.
pub fn generate_scenario(
    n: usize,
    seed: u64,
    style: InstanceStyle,
    add_at: u64,
    update_at: u64,
) -> Result<GeneratedScenario> {
    check_count(n)?;
    let mut rng = RandomStream::new(seed);
    let full = costs(n + 1, style, &mut rng);
    let directed = style == InstanceStyle::RandomAsymmetric;
    let instance = InstanceFile {
        cities: (0..n).map(city).collect(),
        costs: full[..n].iter().map(|r| r[..n].to_vec()).collect(),
        directed,
    };

    let added = Event {
        at: add_at,
        kind: EventKind::AddCity {
            city: city(n),
            row: full[n][..n].to_vec(),
            col: (0..n).map(|k| full[k][n]).collect(),
        },
    };

    let total = n + 1;
    let present = if update_at >= add_at { total } else { n };
    let batch = (present * (present - 1) / 2 / 4).max(1);
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    while seen.len() < batch {
        let i = rng.index(present);
        let j = rng.index(present);
        let key = if directed { (i, j) } else { (i.min(j), i.max(j)) };
        if i == j || !seen.insert(key) {
            continue;
        }
        let cost = (full[i][j] * rng.uniform(0.5, 1.5)).round().max(1.0);
        edges.push(EdgeUpdate {
            from: city(i).id,
            to: city(j).id,
            cost,
        });
        if !directed {
            edges.push(EdgeUpdate {
                from: city(j).id,
                to: city(i).id,
                cost,
            });
        }
    }
    let updated = Event {
        at: update_at,
        kind: EventKind::UpdateEdges { edges },
    };

    let mut events = vec![added, updated];
    events.sort_by_key(|e| e.at);
    Ok(GeneratedScenario {
        instance,
        schedule: EventSchedule::new(events)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamic::CostProvider;
    use crate::dynamic::ReplayProvider;

    #[test]
    fn euclidean_is_symmetric_and_valid() {
        let inst = generate_instance(9, 3, InstanceStyle::Euclidean).unwrap();
        inst.validate().unwrap();
        assert!(!inst.directed);
        assert_eq!(inst.cities[4].id, "c04");
    }

    #[test]
    fn asymmetric_costs_in_range() {
        let inst = generate_instance(7, 1, InstanceStyle::RandomAsymmetric).unwrap();
        inst.validate().unwrap();
        for (i, row) in inst.costs.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if i != j {
                    assert!((5000.0..=100000.0).contains(&c));
                }
            }
        }
    }

    #[test]
    fn scenario_replays() {
        for style in [InstanceStyle::Euclidean, InstanceStyle::RandomAsymmetric] {
            let s = generate_scenario(10, 5, style, 15, 35).unwrap();
            let m = s.instance.to_matrix().unwrap();
            let p = ReplayProvider::new(m, s.schedule.clone()).unwrap();
            assert_eq!(p.matrix().cities_at(14).len(), 10);
            assert_eq!(p.matrix().cities_at(15).len(), 11);
            assert_eq!(p.pending_events(35).len(), 1);
        }
    }

    #[test]
    fn counts_are_bounded() {
        assert!(generate_instance(2, 0, InstanceStyle::Euclidean).is_err());
        assert!(generate_scenario(65, 0, InstanceStyle::Euclidean, 1, 2).is_err());
    }

    #[test]
    fn same_seed_same_scenario() {
        let a = generate_scenario(12, 9, InstanceStyle::Euclidean, 15, 35).unwrap();
        let b = generate_scenario(12, 9, InstanceStyle::Euclidean, 15, 35).unwrap();
        assert_eq!(a, b);
    }
}

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tsp::Tour;

use super::event::{Event, EventKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct City {
    pub id: String,
    #[serde(default)]
    pub label: String,
}

impl City {
    pub fn new(id: impl Into<String>, label: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            label: label.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
struct CityRecord {
    city: City,
    added_at: u64,
}

/// `(from time, cost)` pairs in ascending time order.
type Timeline = Vec<(u64, f64)>;

/// Time-varying directed cost matrix `D(t) = [d_ij(t)]`.
///
/// Cities are indexed in order of addition. Every entry keeps its full
/// history, so `cost(i, j, t)` answers for any `t` once the events up to
/// `t` have been applied. Costs are piecewise constant between events.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicCostMatrix {
    cities: Vec<CityRecord>,
    index: HashMap<String, usize>,
    edges: Vec<Vec<Timeline>>,
    log: Vec<Event>,
}

fn check_cost(value: f64, what: impl FnOnce() -> String) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::Schema(format!(
            "{}: cost {value} must be finite and >= 0",
            what()
        )))
    }
}

impl DynamicCostMatrix {
    /// Cities present from time 0 with a square cost matrix (diagonal ignored).
    pub fn new(cities: Vec<City>, costs: Vec<Vec<f64>>) -> Result<Self> {
        let n = cities.len();
        if costs.len() != n {
            return Err(Error::Schema(format!(
                "costs has {} rows for {n} cities",
                costs.len()
            )));
        }
        let mut index = HashMap::with_capacity(n);
        for (k, c) in cities.iter().enumerate() {
            if index.insert(c.id.clone(), k).is_some() {
                return Err(Error::Schema(format!("duplicate city id `{}`", c.id)));
            }
        }
        let mut edges = Vec::with_capacity(n);
        for (i, row) in costs.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Schema(format!(
                    "costs[{i}] has {} entries, expected {n}",
                    row.len()
                )));
            }
            let mut line = Vec::with_capacity(n);
            for (j, &v) in row.iter().enumerate() {
                if i == j {
                    line.push(Vec::new());
                } else {
                    line.push(vec![(0, check_cost(v, || format!("costs[{i}][{j}]"))?)]);
                }
            }
            edges.push(line);
        }
        Ok(Self {
            cities: cities
                .into_iter()
                .map(|city| CityRecord { city, added_at: 0 })
                .collect(),
            index,
            edges,
            log: Vec::new(),
        })
    }

    /// Total number of cities ever added.
    pub fn city_count(&self) -> usize {
        self.cities.len()
    }

    pub fn city(&self, index: usize) -> Option<&City> {
        self.cities.get(index).map(|r| &r.city)
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn added_at(&self, index: usize) -> Option<u64> {
        self.cities.get(index).map(|r| r.added_at)
    }

    /// Indices of the cities present at `t`, ascending.
    pub fn cities_at(&self, t: u64) -> Vec<usize> {
        (0..self.cities.len())
            .filter(|&k| self.cities[k].added_at <= t)
            .collect()
    }

    /// Events applied so far, in order.
    pub fn log(&self) -> &[Event] {
        &self.log
    }

    /// `d_ij(t)`.
    pub fn cost(&self, from: usize, to: usize, t: u64) -> Result<f64> {
        let present = |k: usize| self.cities.get(k).is_some_and(|r| r.added_at <= t);
        if from == to {
            return Err(Error::Instance(format!(
                "self-loop cost d[{from}][{from}] is undefined"
            )));
        }
        if !present(from) || !present(to) {
            return Err(Error::Instance(format!(
                "no cost from {from} to {to} at time {t}"
            )));
        }
        let timeline = &self.edges[from][to];
        let k = timeline.partition_point(|&(at, _)| at <= t);
        Ok(timeline[k - 1].1)
    }

    /// Ids of a tour, in tour order.
    pub fn tour_ids(&self, tour: &Tour) -> Vec<String> {
        tour.as_slice()
            .iter()
            .map(|&k| self.cities[k].city.id.clone())
            .collect()
    }

    /// Apply one event. Events must arrive in non-decreasing time order.
    /// The matrix is untouched when the event is rejected.
    pub fn apply_event(&mut self, event: &Event) -> Result<()> {
        if let Some(last) = self.log.last() {
            if event.at < last.at {
                return Err(Error::Consistency(format!(
                    "event at {} arrives after one at {}",
                    event.at, last.at
                )));
            }
        }
        match &event.kind {
            EventKind::AddCity { city, row, col } => {
                let n = self.cities.len();
                if self.index.contains_key(&city.id) {
                    return Err(Error::Instance(format!("city `{}` already exists", city.id)));
                }
                if row.len() != n || col.len() != n {
                    return Err(Error::Schema(format!(
                        "add_city `{}` at {}: row has {} and col has {} entries, expected {n}",
                        city.id,
                        event.at,
                        row.len(),
                        col.len()
                    )));
                }
                for (k, (&r, &c)) in row.iter().zip(col).enumerate() {
                    check_cost(r, || format!("add_city `{}` row[{k}]", city.id))?;
                    check_cost(c, || format!("add_city `{}` col[{k}]", city.id))?;
                }
                for (k, line) in self.edges.iter_mut().enumerate() {
                    line.push(vec![(event.at, col[k])]);
                }
                let mut own: Vec<Timeline> = row.iter().map(|&r| vec![(event.at, r)]).collect();
                own.push(Vec::new());
                self.edges.push(own);
                self.index.insert(city.id.clone(), n);
                self.cities.push(CityRecord {
                    city: city.clone(),
                    added_at: event.at,
                });
            }
            EventKind::UpdateEdges { edges } => {
                let mut resolved = Vec::with_capacity(edges.len());
                for e in edges {
                    let from = self.index_of(&e.from).ok_or_else(|| {
                        Error::Instance(format!("update_edges at {}: unknown city `{}`", event.at, e.from))
                    })?;
                    let to = self.index_of(&e.to).ok_or_else(|| {
                        Error::Instance(format!("update_edges at {}: unknown city `{}`", event.at, e.to))
                    })?;
                    if from == to {
                        return Err(Error::Instance(format!(
                            "update_edges at {}: self-loop on `{}`",
                            event.at, e.from
                        )));
                    }
                    if self.cities[from].added_at > event.at || self.cities[to].added_at > event.at {
                        return Err(Error::Instance(format!(
                            "update_edges at {}: {} -> {} not present yet",
                            event.at, e.from, e.to
                        )));
                    }
                    let cost = check_cost(e.cost, || format!("update_edges {} -> {}", e.from, e.to))?;
                    resolved.push((from, to, cost));
                }
                for (from, to, cost) in resolved {
                    let timeline = &mut self.edges[from][to];
                    match timeline.last_mut() {
                        Some(last) if last.0 == event.at => last.1 = cost,
                        _ => timeline.push((event.at, cost)),
                    }
                }
            }
        }
        self.log.push(event.clone());
        Ok(())
    }

    /// Dense view of the matrix at time `t`, indexed by global city index.
    /// Pairs involving a city not yet present cost infinity.
    pub fn snapshot(&self, t: u64) -> CostSnapshot {
        let n = self.cities.len();
        let cities = self.cities_at(t);
        let mut dense = vec![f64::INFINITY; n * n];
        for &i in &cities {
            dense[i * n + i] = 0.0;
            for &j in &cities {
                if i != j {
                    dense[i * n + j] = self.cost(i, j, t).expect("both cities present at t");
                }
            }
        }
        CostSnapshot {
            time: t,
            n,
            dense,
            cities,
        }
    }
}

/// Frozen, dense copy of `D(t)` for the hot loops.
#[derive(Debug, Clone, PartialEq)]
pub struct CostSnapshot {
    time: u64,
    n: usize,
    dense: Vec<f64>,
    cities: Vec<usize>,
}

impl CostSnapshot {
    pub fn time(&self) -> u64 {
        self.time
    }

    /// Cities present, ascending.
    pub fn cities(&self) -> &[usize] {
        &self.cities
    }

    #[inline]
    pub fn cost(&self, from: usize, to: usize) -> f64 {
        self.dense[from * self.n + to]
    }

    /// Closed-cycle cost. The tour must only contain present cities.
    pub fn tour_cost(&self, tour: &Tour) -> f64 {
        let order = tour.as_slice();
        let n = order.len();
        if n < 2 {
            return 0.0;
        }
        let mut total = self.cost(order[n - 1], order[0]);
        for w in order.windows(2) {
            total += self.cost(w[0], w[1]);
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamic::event::EdgeUpdate;

    fn three() -> DynamicCostMatrix {
        let cities = ["a", "b", "c"].iter().map(|s| City::new(*s, *s)).collect();
        DynamicCostMatrix::new(
            cities,
            vec![vec![0.0, 1.0, 2.0], vec![3.0, 0.0, 4.0], vec![5.0, 6.0, 0.0]],
        )
        .unwrap()
    }

    fn update(at: u64, edges: &[(&str, &str, f64)]) -> Event {
        Event {
            at,
            kind: EventKind::UpdateEdges {
                edges: edges
                    .iter()
                    .map(|&(f, t, c)| EdgeUpdate {
                        from: f.into(),
                        to: t.into(),
                        cost: c,
                    })
                    .collect(),
            },
        }
    }

    #[test]
    fn rejects_bad_matrices() {
        let c = || vec![City::new("a", ""), City::new("b", "")];
        assert!(DynamicCostMatrix::new(c(), vec![vec![0.0, 1.0]]).is_err());
        assert!(DynamicCostMatrix::new(c(), vec![vec![0.0, -1.0], vec![1.0, 0.0]]).is_err());
        assert!(DynamicCostMatrix::new(c(), vec![vec![0.0, f64::NAN], vec![1.0, 0.0]]).is_err());
        let dup = vec![City::new("a", ""), City::new("a", "")];
        assert!(DynamicCostMatrix::new(dup, vec![vec![0.0, 1.0], vec![1.0, 0.0]]).is_err());
    }

    #[test]
    fn update_changes_only_listed_entries() {
        let mut m = three();
        let before = m.snapshot(0);
        m.apply_event(&update(4, &[("a", "b", 99.0)])).unwrap();
        let after = m.snapshot(4);
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let expect = if (i, j) == (0, 1) { 99.0 } else { before.cost(i, j) };
                assert_eq!(after.cost(i, j), expect);
            }
        }
        // history stays queryable
        assert_eq!(m.cost(0, 1, 3).unwrap(), 1.0);
        assert_eq!(m.cost(0, 1, 4).unwrap(), 99.0);
    }

    #[test]
    fn empty_update_is_identity() {
        let mut m = three();
        m.apply_event(&update(2, &[])).unwrap();
        assert_eq!(m.snapshot(2), {
            let mut s = three().snapshot(0);
            s.time = 2;
            s
        });
    }

    #[test]
    fn add_city_grows_matrix() {
        let n = 11;
        let cities = (0..n).map(|k| City::new(format!("c{k}"), "")).collect();
        let costs = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { 1.0 }).collect())
            .collect();
        let mut m = DynamicCostMatrix::new(cities, costs).unwrap();
        let add = Event {
            at: 5,
            kind: EventKind::AddCity {
                city: City::new("new", "New"),
                row: vec![2.0; n],
                col: vec![3.0; n],
            },
        };
        m.apply_event(&add).unwrap();
        assert_eq!(m.cities_at(4).len(), 11);
        assert_eq!(m.cities_at(5).len(), 12);
        let mut defined = 0;
        for i in 0..12 {
            for j in 0..12 {
                if i != j && m.cost(i, j, 5).is_ok() {
                    defined += 1;
                }
            }
        }
        assert_eq!(defined, 12 * 11);
        assert!(m.cost(11, 0, 4).is_err());
        assert_eq!(m.cost(11, 0, 5).unwrap(), 2.0);
        assert_eq!(m.cost(0, 11, 5).unwrap(), 3.0);
    }

    #[test]
    fn event_errors_leave_matrix_untouched() {
        let mut m = three();
        let before = m.clone();
        let short = Event {
            at: 1,
            kind: EventKind::AddCity {
                city: City::new("d", ""),
                row: vec![1.0; 2],
                col: vec![1.0; 3],
            },
        };
        assert!(matches!(m.apply_event(&short), Err(Error::Schema(_))));
        assert!(matches!(
            m.apply_event(&update(1, &[("a", "b", 1.0), ("a", "zz", 2.0)])),
            Err(Error::Instance(_))
        ));
        assert_eq!(m, before);
        m.apply_event(&update(5, &[])).unwrap();
        assert!(matches!(
            m.apply_event(&update(3, &[])),
            Err(Error::Consistency(_))
        ));
    }
}

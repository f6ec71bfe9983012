use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::matrix::City;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeUpdate {
    pub from: String,
    pub to: String,
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EventKind {
    /// `row[k]` is the cost from the new city to existing city `k`,
    /// `col[k]` the cost from city `k` to the new one.
    AddCity {
        city: City,
        row: Vec<f64>,
        col: Vec<f64>,
    },
    UpdateEdges {
        edges: Vec<EdgeUpdate>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Event {
    /// Migration-loop index at which the event fires.
    pub at: u64,
    #[serde(flatten)]
    pub kind: EventKind,
}

impl Event {
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            EventKind::AddCity { .. } => "add_city",
            EventKind::UpdateEdges { .. } => "update_edges",
        }
    }
}

/// Time-ordered events; at most one city addition per tick.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EventSchedule {
    events: Vec<Event>,
}

impl EventSchedule {
    pub fn new(events: Vec<Event>) -> Result<Self> {
        for (k, w) in events.windows(2).enumerate() {
            if w[1].at < w[0].at {
                return Err(Error::Validation(format!(
                    "events[{}] at {} precedes events[{k}] at {}",
                    k + 1,
                    w[1].at,
                    w[0].at
                )));
            }
            if w[0].at == w[1].at
                && matches!(w[0].kind, EventKind::AddCity { .. })
                && matches!(w[1].kind, EventKind::AddCity { .. })
            {
                return Err(Error::Validation(format!(
                    "two add_city events at tick {}",
                    w[0].at
                )));
            }
        }
        Ok(Self { events })
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Events firing exactly at `t`.
    pub fn at(&self, t: u64) -> &[Event] {
        let lo = self.events.partition_point(|e| e.at < t);
        let hi = self.events.partition_point(|e| e.at <= t);
        &self.events[lo..hi]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn add(at: u64, id: &str) -> Event {
        Event {
            at,
            kind: EventKind::AddCity {
                city: City::new(id, ""),
                row: vec![],
                col: vec![],
            },
        }
    }

    fn upd(at: u64) -> Event {
        Event {
            at,
            kind: EventKind::UpdateEdges { edges: vec![] },
        }
    }

    #[test]
    fn ordering_rules() {
        assert!(EventSchedule::new(vec![upd(3), upd(1)]).is_err());
        assert!(EventSchedule::new(vec![add(2, "x"), add(2, "y")]).is_err());
        let s = EventSchedule::new(vec![add(2, "x"), upd(2), upd(5)]).unwrap();
        assert_eq!(s.at(2).len(), 2);
        assert_eq!(s.at(3).len(), 0);
        assert_eq!(s.at(5).len(), 1);
    }

    #[test]
    fn json_shape() {
        let json = r#"{"events": [
            {"at": 3, "kind": "add_city", "city": {"id": "z", "label": "Zed"}, "row": [1, 2], "col": [3, 4]},
            {"at": 7, "kind": "update_edges", "edges": [{"from": "a", "to": "b", "cost": 12.5}]}
        ]}"#;
        let s: EventSchedule = serde_json::from_str(json).unwrap();
        assert_eq!(s.events()[0].kind_name(), "add_city");
        assert_eq!(s.events()[1].at, 7);
        let back: EventSchedule = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
    }
}

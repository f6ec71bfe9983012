//! Instance and schedule files (JSON, UTF-8).

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::event::{Event, EventSchedule};
use super::matrix::{City, DynamicCostMatrix};

/// `{"cities": [...], "costs": [[...]], "directed": bool}`; costs are
/// ordered like `cities`, the diagonal is zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub cities: Vec<City>,
    pub costs: Vec<Vec<f64>>,
    pub directed: bool,
}

impl InstanceFile {
    pub fn validate(&self) -> Result<()> {
        let n = self.cities.len();
        if n < 2 {
            return Err(Error::Validation(format!("cities: need at least 2, found {n}")));
        }
        for (k, c) in self.cities.iter().enumerate() {
            if c.id.is_empty() {
                return Err(Error::Validation(format!("cities[{k}].id is empty")));
            }
            if self.cities[..k].iter().any(|p| p.id == c.id) {
                return Err(Error::Validation(format!(
                    "cities[{k}].id `{}` is a duplicate",
                    c.id
                )));
            }
        }
        if self.costs.len() != n {
            return Err(Error::Validation(format!(
                "costs: {} rows for {n} cities",
                self.costs.len()
            )));
        }
        for (i, row) in self.costs.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Validation(format!(
                    "costs[{i}]: {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if i == j {
                    if v != 0.0 {
                        return Err(Error::Validation(format!(
                            "costs[{i}][{i}] = {v}, diagonal must be 0"
                        )));
                    }
                } else if !(v.is_finite() && v >= 0.0) {
                    return Err(Error::Validation(format!(
                        "costs[{i}][{j}] = {v} must be finite and >= 0"
                    )));
                } else if !self.directed && v != self.costs[j][i] {
                    return Err(Error::Validation(format!(
                        "costs[{i}][{j}] = {v} but costs[{j}][{i}] = {} in an undirected instance",
                        self.costs[j][i]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> Result<DynamicCostMatrix> {
        self.validate()?;
        DynamicCostMatrix::new(self.cities.clone(), self.costs.clone())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ScheduleFile {
    pub events: Vec<Event>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn parse_instance(text: &str, path: &Path) -> Result<InstanceFile> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|source| Error::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    file.validate()
        .map_err(|e| Error::Validation(format!("{}: {e}", path.display())))?;
    Ok(file)
}

pub fn read_instance(path: &Path) -> Result<InstanceFile> {
    parse_instance(&read(path)?, path)
}

pub fn parse_schedule(text: &str, path: &Path) -> Result<EventSchedule> {
    let file: ScheduleFile = serde_json::from_str(text).map_err(|source| Error::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    EventSchedule::new(file.events).map_err(|e| Error::Validation(format!("{}: {e}", path.display())))
}

pub fn read_schedule(path: &Path) -> Result<EventSchedule> {
    parse_schedule(&read(path)?, path)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("plain data serializes");
    text.push('\n');
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_instance(path: &Path, instance: &InstanceFile) -> Result<()> {
    write_json(path, instance)
}

pub fn write_schedule(path: &Path, schedule: &EventSchedule) -> Result<()> {
    write_json(
        path,
        &ScheduleFile {
            events: schedule.events().to_vec(),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("test.json")
    }

    #[test]
    fn parses_a_symmetric_instance() {
        let text = r#"{"cities": [{"id": "a", "label": "A"}, {"id": "b", "label": "B"}, {"id": "c", "label": "C"}],
                       "costs": [[0, 1, 2], [1, 0, 3], [2, 3, 0]], "directed": false}"#;
        let inst = parse_instance(text, p()).unwrap();
        let m = inst.to_matrix().unwrap();
        assert_eq!(m.cost(2, 1, 0).unwrap(), 3.0);
    }

    #[test]
    fn rejects_asymmetric_undirected() {
        let text = r#"{"cities": [{"id": "a"}, {"id": "b"}], "costs": [[0, 1], [2, 0]], "directed": false}"#;
        let err = parse_instance(text, p()).unwrap_err();
        assert!(
            matches!(err, Error::Validation(ref m) if m.contains("costs[0][1]")),
            "{err}"
        );
        let directed = text.replace("false", "true");
        assert!(parse_instance(&directed, p()).is_ok());
    }

    #[test]
    fn rejects_nonzero_diagonal_and_ragged_rows() {
        let diag = r#"{"cities": [{"id": "a"}, {"id": "b"}], "costs": [[5, 1], [1, 0]], "directed": true}"#;
        assert!(parse_instance(diag, p()).is_err());
        let ragged = r#"{"cities": [{"id": "a"}, {"id": "b"}], "costs": [[0, 1], [1]], "directed": true}"#;
        assert!(parse_instance(ragged, p()).is_err());
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_instance("{\n \"cities\": [,\n}", p()).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn schedule_order_is_validated() {
        let text = r#"{"events": [
            {"at": 9, "kind": "update_edges", "edges": []},
            {"at": 2, "kind": "update_edges", "edges": []}]}"#;
        assert!(matches!(parse_schedule(text, p()), Err(Error::Validation(_))));
    }
}

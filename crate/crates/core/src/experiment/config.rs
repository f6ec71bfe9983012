use std::collections::BTreeSet;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::optimizers::{DeParams, PsoParams, SomaParams};
use crate::Algorithm;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Benchmark,
    Dtsp,
    Generate,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "benchmark" => Ok(Mode::Benchmark),
            "dtsp" => Ok(Mode::Dtsp),
            "generate" => Ok(Mode::Generate),
            other => Err(Error::Validation(format!(
                "unknown mode `{other}` (expected benchmark, dtsp or generate)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceStyle {
    Euclidean,
    RandomAsymmetric,
}

impl FromStr for InstanceStyle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" => Ok(InstanceStyle::Euclidean),
            "random-asymmetric" => Ok(InstanceStyle::RandomAsymmetric),
            other => Err(Error::Validation(format!(
                "unknown instance style `{other}` (expected euclidean or random-asymmetric)"
            ))),
        }
    }
}

/// Keys accepted by `--set key=value`.
pub const PARAMETER_KEYS: [&str; 11] = [
    "path_length",
    "step",
    "pr",
    "lambda_low",
    "lambda_high",
    "f",
    "cr",
    "inertia",
    "cognitive",
    "social",
    "target_fitness",
];

/// Everything one experiment needs. Build it, then call [`validate`]
/// (the runners do so themselves before touching the filesystem).
///
/// [`validate`]: ExperimentConfig::validate
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub algorithms: Vec<Algorithm>,
    pub functions: Vec<String>,
    pub dimensions: Vec<usize>,
    pub population_size: usize,
    /// `None` picks the mode default (100 for benchmarks, 60 for DTSP).
    pub max_iterations: Option<usize>,
    pub seeds: Vec<u64>,
    pub overrides: Vec<(String, f64)>,
    pub instance: Option<PathBuf>,
    pub schedule: Option<PathBuf>,
    pub reinit_on_event: bool,
    pub out: PathBuf,
    pub cities: usize,
    pub style: InstanceStyle,
}

impl ExperimentConfig {
    pub fn new(mode: Mode, out: impl Into<PathBuf>) -> Self {
        Self {
            mode,
            algorithms: Algorithm::ALL.to_vec(),
            functions: Vec::new(),
            dimensions: vec![2],
            population_size: 20,
            max_iterations: None,
            seeds: vec![0],
            overrides: Vec::new(),
            instance: None,
            schedule: None,
            reinit_on_event: false,
            out: out.into(),
            cities: 11,
            style: InstanceStyle::Euclidean,
        }
    }

    pub fn iterations(&self) -> usize {
        self.max_iterations.unwrap_or(match self.mode {
            Mode::Dtsp => 60,
            _ => 100,
        })
    }

    /// Parameter sets after applying overrides.
    pub fn parameters(&self) -> Result<Parameters> {
        let mut p = Parameters::default();
        for (key, value) in &self.overrides {
            if !value.is_finite() && key != "target_fitness" {
                return Err(Error::Validation(format!(
                    "--set {key}: value {value} is not finite"
                )));
            }
            match key.as_str() {
                "path_length" => p.soma.path_length = *value,
                "step" => p.soma.step = *value,
                "pr" => p.soma.pr = *value,
                "lambda_low" => p.soma.lambda_low = *value,
                "lambda_high" => p.soma.lambda_high = *value,
                "f" => p.de.f = *value,
                "cr" => p.de.cr = *value,
                "inertia" => p.pso.inertia = *value,
                "cognitive" => p.pso.cognitive = *value,
                "social" => p.pso.social = *value,
                "target_fitness" => p.target_fitness = *value,
                other => {
                    return Err(Error::Validation(format!(
                        "unknown parameter `{other}` (known: {})",
                        PARAMETER_KEYS.join(", ")
                    )))
                }
            }
        }
        Ok(p)
    }

    /// Fail-fast checks that need no file access.
    pub fn validate(&self) -> Result<()> {
        let invalid = |e: Error| match e {
            Error::Validation(_) => e,
            other => Error::Validation(other.to_string()),
        };
        if self.seeds.is_empty() {
            return Err(Error::Validation("seed list is empty".into()));
        }
        let mut seen = BTreeSet::new();
        for s in &self.seeds {
            if !seen.insert(s) {
                return Err(Error::Validation(format!("seed {s} listed twice")));
            }
        }
        let params = self.parameters()?;
        match self.mode {
            Mode::Benchmark | Mode::Dtsp => {
                if self.algorithms.is_empty() {
                    return Err(Error::Validation("no algorithms requested".into()));
                }
                let mut unique = BTreeSet::new();
                for &alg in &self.algorithms {
                    if !unique.insert(alg) {
                        return Err(Error::Validation(format!("algorithm {alg} listed twice")));
                    }
                    let min = if alg == Algorithm::De { 4 } else { 2 };
                    if self.population_size < min {
                        return Err(Error::Validation(format!(
                            "{alg} needs a population of at least {min}, got {}",
                            self.population_size
                        )));
                    }
                    match alg {
                        Algorithm::Soma | Algorithm::Osoma => params.soma.validate(),
                        Algorithm::De => params.de.validate(),
                        Algorithm::Pso => params.pso.validate(),
                    }
                    .map_err(invalid)?;
                }
            }
            Mode::Generate => {
                if !(3..=64).contains(&self.cities) {
                    return Err(Error::Validation(format!(
                        "city count {} outside 3..=64",
                        self.cities
                    )));
                }
            }
        }
        match self.mode {
            Mode::Benchmark => {
                if self.functions.is_empty() {
                    return Err(Error::Validation("benchmark mode needs --function".into()));
                }
                if self.dimensions.is_empty() {
                    return Err(Error::Validation("benchmark mode needs --dims".into()));
                }
                for name in &self.functions {
                    let f = crate::benchmarks::lookup(name).map_err(invalid)?;
                    for &d in &self.dimensions {
                        f.check_dimension(d).map_err(invalid)?;
                    }
                }
            }
            Mode::Dtsp => {
                if self.instance.is_none() {
                    return Err(Error::Validation("dtsp mode needs --instance".into()));
                }
            }
            Mode::Generate => {}
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Parameters {
    pub soma: SomaParams,
    pub de: DeParams,
    pub pso: PsoParams,
    pub target_fitness: f64,
}

impl Default for Parameters {
    fn default() -> Self {
        Self {
            soma: SomaParams::default(),
            de: DeParams::default(),
            pso: PsoParams::default(),
            target_fitness: f64::NEG_INFINITY,
        }
    }
}

/// `"30"` means seeds `0..30`; `"3,8,21"` is an explicit list; `"5..9"`
/// a half-open range. Lists and ranges can mix: `"1,4..6"`.
pub fn parse_seeds(text: &str) -> Result<Vec<u64>> {
    let bad = || Error::Validation(format!("cannot parse seeds `{text}`"));
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Validation("seed list is empty".into()));
    }
    if !text.contains(',') && !text.contains("..") {
        let count: u64 = text.parse().map_err(|_| bad())?;
        return Ok((0..count).collect());
    }
    let mut seeds = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let b: u64 = b.trim().parse().map_err(|_| bad())?;
            seeds.extend(a..b);
        } else {
            seeds.push(part.parse().map_err(|_| bad())?);
        }
    }
    Ok(seeds)
}

/// `key=value` from `--set`.
pub fn parse_override(text: &str) -> Result<(String, f64)> {
    let (key, value) = text
        .split_once('=')
        .ok_or_else(|| Error::Validation(format!("--set expects key=value, got `{text}`")))?;
    let key = key.trim().to_string();
    if !PARAMETER_KEYS.contains(&key.as_str()) {
        return Err(Error::Validation(format!(
            "unknown parameter `{key}` (known: {})",
            PARAMETER_KEYS.join(", ")
        )));
    }
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|_| Error::Validation(format!("--set {key}: `{value}` is not a number")))?;
    Ok((key, value))
}

pub fn parse_algorithms(text: &str) -> Result<Vec<Algorithm>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|e: Error| Error::Validation(e.to_string())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bench() -> ExperimentConfig {
        let mut c = ExperimentConfig::new(Mode::Benchmark, "out");
        c.functions = vec!["sphere".into()];
        c
    }

    #[test]
    fn seed_syntax() {
        assert_eq!(parse_seeds("3").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_seeds("7,").unwrap(), vec![7]);
        assert_eq!(parse_seeds("1, 4..6").unwrap(), vec![1, 4, 5]);
        assert!(parse_seeds("x").is_err());
    }

    #[test]
    fn duplicate_seeds_rejected() {
        let mut c = bench();
        c.seeds = vec![1, 2, 1];
        assert!(matches!(c.validate(), Err(Error::Validation(_))));
        c.seeds.clear();
        assert!(c.validate().is_err());
    }

    #[test]
    fn unknown_override_rejected() {
        assert!(parse_override("gamma=2").is_err());
        assert!(parse_override("pr").is_err());
        assert_eq!(parse_override("pr=0.3").unwrap(), ("pr".to_string(), 0.3));
        let mut c = bench();
        c.overrides = vec![("pr".into(), 2.0)];
        assert!(c.validate().is_err());
    }

    #[test]
    fn two_dimensional_functions_checked_up_front() {
        let mut c = bench();
        c.functions = vec!["easom".into()];
        c.dimensions = vec![2, 5];
        assert!(matches!(c.validate(), Err(Error::Validation(m)) if m.contains("easom")));
        c.dimensions = vec![2];
        c.validate().unwrap();
    }

    #[test]
    fn generate_bounds() {
        let mut c = ExperimentConfig::new(Mode::Generate, "out");
        c.cities = 2;
        assert!(c.validate().is_err());
        c.cities = 65;
        assert!(c.validate().is_err());
        c.cities = 11;
        c.validate().unwrap();
    }
}

//! The eleven unconstrained test functions, keyed `f1`..`f11` and by name.
//!
//! Formulas are kept exactly as listed for this suite, including the unusual
//! Schwefel form `(sum x^2)^pi` and the `sum |x|` reading of the 3rd De Jong
//! function. Ackley uses `a = d` and `c = 2*pi`; Rosenbrock sums over
//! consecutive pairs and therefore needs `d >= 2`.

use std::f64::consts::{E, PI};

use crate::error::{Error, Result};
use crate::population::Objective;
use crate::space::SearchSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimensionConstraint {
    /// Any `d >= min`.
    AtLeast(usize),
    Exactly(usize),
}

impl DimensionConstraint {
    pub fn admits(self, d: usize) -> bool {
        match self {
            DimensionConstraint::AtLeast(min) => d >= min,
            DimensionConstraint::Exactly(n) => d == n,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BenchmarkFunction {
    /// `f1` .. `f11`.
    pub id: &'static str,
    /// Lowercase registry name, e.g. `sphere`.
    pub name: &'static str,
    pub title: &'static str,
    pub interval: (f64, f64),
    pub known_optimum: f64,
    pub dimensions: DimensionConstraint,
    formula: fn(&[f64]) -> f64,
    optimizer: fn(usize) -> Vec<f64>,
}

impl BenchmarkFunction {
    pub fn check_dimension(&self, d: usize) -> Result<()> {
        if self.dimensions.admits(d) {
            Ok(())
        } else {
            let need = match self.dimensions {
                DimensionConstraint::AtLeast(m) => format!("at least {m}"),
                DimensionConstraint::Exactly(n) => format!("exactly {n}"),
            };
            Err(Error::Dimension(format!(
                "{} needs {need} dimensions, got {d}",
                self.name
            )))
        }
    }

    /// Evaluate at `x`, checking the dimension constraint.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        self.check_dimension(x.len())?;
        Ok((self.formula)(x))
    }

    /// Evaluate without checks. Callers guarantee the dimension.
    pub fn value(&self, x: &[f64]) -> f64 {
        (self.formula)(x)
    }

    pub fn space(&self, d: usize) -> Result<SearchSpace> {
        self.check_dimension(d)?;
        SearchSpace::cube(d, self.interval.0, self.interval.1)
    }

    /// A global minimizer in `d` dimensions.
    pub fn optimizer_point(&self, d: usize) -> Vec<f64> {
        (self.optimizer)(d)
    }
}

impl Objective for BenchmarkFunction {
    fn evaluate(&self, x: &[f64]) -> f64 {
        (self.formula)(x)
    }
}

fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

fn ackley(x: &[f64]) -> f64 {
    let a = x.len() as f64;
    let c = 2.0 * PI;
    let squares: f64 = x.iter().map(|v| v * v).sum();
    let cosines: f64 = x.iter().map(|v| (c * v).cos()).sum();
    -20.0 * (-0.2 * (squares / a).sqrt()).exp() - (cosines / a).exp() + 20.0 + E
}

fn qing(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(k, v)| {
            let t = v * v - (k + 1) as f64;
            t * t
        })
        .sum()
}

fn dejong3(x: &[f64]) -> f64 {
    x.iter().map(|v| v.abs()).sum()
}

fn dejong4(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(k, v)| (k + 1) as f64 * v.powi(4))
        .sum()
}

fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| {
            let a = w[1] - w[0] * w[0];
            let b = w[0] - 1.0;
            100.0 * a * a + b * b
        })
        .sum()
}

fn schwefel(x: &[f64]) -> f64 {
    sphere(x).powf(PI)
}

fn booth(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (a + 2.0 * b - 7.0).powi(2) + (2.0 * a + b - 5.0).powi(2)
}

fn matyas(x: &[f64]) -> f64 {
    0.26 * (x[0] * x[0] + x[1] * x[1]) - 0.48 * x[0] * x[1]
}

fn easom(x: &[f64]) -> f64 {
    -x[0].cos() * x[1].cos() * (-(x[0] - PI).powi(2) - (x[1] - PI).powi(2)).exp()
}

fn bohachevsky(x: &[f64]) -> f64 {
    x[0] * x[0] + 2.0 * x[1] * x[1] - 0.3 * (3.0 * PI * x[0]).cos() - 0.4 * (4.0 * PI * x[1]).cos() + 0.7
}

fn origin(d: usize) -> Vec<f64> {
    vec![0.0; d]
}

const REGISTRY: [BenchmarkFunction; 11] = [
    BenchmarkFunction {
        id: "f1",
        name: "sphere",
        title: "Sphere",
        interval: (-5.12, 5.12),
        known_optimum: 0.0,
        dimensions: DimensionConstraint::AtLeast(1),
        formula: sphere,
        optimizer: origin,
    },
    BenchmarkFunction {
        id: "f2",
        name: "ackley",
        title: "Ackley",
        interval: (-32.0, 32.0),
        known_optimum: 0.0,
        dimensions: DimensionConstraint::AtLeast(1),
        formula: ackley,
        optimizer: origin,
    },
    BenchmarkFunction {
        id: "f3",
        name: "qing",
        title: "Qing",
        interval: (-500.0, 500.0),
        known_optimum: 0.0,
        dimensions: DimensionConstraint::AtLeast(1),
        formula: qing,
        optimizer: |d| (1..=d).map(|k| (k as f64).sqrt()).collect(),
    },
    BenchmarkFunction {
        id: "f4",
        name: "dejong3",
        title: "3rd De Jong",
        interval: (-2.048, 2.048),
        known_optimum: 0.0,
        dimensions: DimensionConstraint::AtLeast(1),
        formula: dejong3,
        optimizer: origin,
    },
    BenchmarkFunction {
        id: "f5",
        name: "dejong4",
        title: "4th De Jong",
        interval: (-1.28, 1.28),
        known_optimum: 0.0,
        dimensions: DimensionConstraint::AtLeast(1),
        formula: dejong4,
        optimizer: origin,
    },
    BenchmarkFunction {
        id: "f6",
        name: "rosenbrock",
        title: "Rosenbrock",
        interval: (-100.0, 100.0),
        known_optimum: 0.0,
        dimensions: DimensionConstraint::AtLeast(2),
        formula: rosenbrock,
        optimizer: |d| vec![1.0; d],
    },
    BenchmarkFunction {
        id: "f7",
        name: "schwefel",
        title: "Schwefel",
        interval: (-100.0, 100.0),
        known_optimum: 0.0,
        dimensions: DimensionConstraint::AtLeast(1),
        formula: schwefel,
        optimizer: origin,
    },
    BenchmarkFunction {
        id: "f8",
        name: "booth",
        title: "Booth",
        interval: (-5.0, 5.0),
        known_optimum: 0.0,
        dimensions: DimensionConstraint::Exactly(2),
        formula: booth,
        optimizer: |_| vec![1.0, 3.0],
    },
    BenchmarkFunction {
        id: "f9",
        name: "matyas",
        title: "Matyas",
        interval: (-10.0, 10.0),
        known_optimum: 0.0,
        dimensions: DimensionConstraint::Exactly(2),
        formula: matyas,
        optimizer: origin,
    },
    BenchmarkFunction {
        id: "f10",
        name: "easom",
        title: "Easom",
        interval: (-100.0, 100.0),
        known_optimum: -1.0,
        dimensions: DimensionConstraint::Exactly(2),
        formula: easom,
        optimizer: |_| vec![PI, PI],
    },
    BenchmarkFunction {
        id: "f11",
        name: "bohachevsky",
        title: "Bohachevsky",
        interval: (-100.0, 100.0),
        known_optimum: 0.0,
        dimensions: DimensionConstraint::Exactly(2),
        formula: bohachevsky,
        optimizer: origin,
    },
];

pub fn registry() -> &'static [BenchmarkFunction] {
    &REGISTRY
}

/// Find a function by id (`f3`) or name (`qing`), case-insensitively.
pub fn lookup(key: &str) -> Result<&'static BenchmarkFunction> {
    let key = key.trim().to_ascii_lowercase();
    REGISTRY
        .iter()
        .find(|f| f.id == key || f.name == key)
        .ok_or(Error::Lookup(key))
}

pub fn evaluate(key: &str, x: &[f64]) -> Result<f64> {
    lookup(key)?.evaluate(x)
}

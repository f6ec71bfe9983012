//! Self-organizing migrating algorithms (SOMA and the opportunistic OSOMA
//! variant) with DE and PSO baselines, a benchmark suite, swap-sequence
//! tours and a dynamic TSP simulator.
//!
//! Everything is seeded: a run keyed by `(seed, config)` reproduces
//! bit-for-bit.

pub mod benchmarks;
pub mod dynamic;
pub mod error;
pub mod experiment;
pub mod optimizers;
pub mod population;
pub mod rng;
pub mod space;
pub mod tsp;

pub use error::{Error, Result};
pub use optimizers::{run, Algorithm, RunConfig, RunResult};
pub use population::{init_population, Individual, Objective, Population};
pub use rng::RandomStream;
pub use space::{confine, RealVector, SearchSpace};

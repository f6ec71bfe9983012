//! Time-varying costs `D(t)`, event schedules, cost providers and the
//! DTSP simulator.

mod event;
pub mod io;
mod matrix;
mod provider;
mod simulate;

pub use event::{EdgeUpdate, Event, EventKind, EventSchedule};
pub use matrix::{City, CostSnapshot, DynamicCostMatrix};
pub use provider::{CostProvider, NoiseSettings, ReplayProvider, SyntheticProvider};
pub use simulate::{repair_population, simulate, HistoryPoint, ScenarioResult, SimulationConfig};

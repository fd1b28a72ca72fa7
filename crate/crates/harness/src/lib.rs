//! Scenario runner, command-line front end and acceptance suite.

pub mod acceptance;
mod error;
pub mod ops;
mod runner;
pub mod scenario;

pub use error::HarnessError;
pub use runner::{run_and_emit, run_scenario, Report, SCHEMA};
pub use scenario::{Operation, Scenario, Tolerances};

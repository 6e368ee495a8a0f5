//! CLI configuration, orchestration, serialization (JSON/CSV/SVG), and the
//! acceptance suite.

pub mod acceptance;
pub mod config;
pub mod output;
pub mod run;
pub mod svg;

pub use config::ExperimentConfig;
pub use run::{run_command, Command};

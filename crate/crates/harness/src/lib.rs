//! Presets, run execution, output files and convergence studies for the
//! `slweno` solver.

pub mod config;
pub mod error;
pub mod output;
pub mod run;
pub mod setup;
pub mod study;


pub use config::{preset, preset_by_name, Preset, RunConfig};
pub use error::HarnessError;

//! Experiment runner for the `qpid` crate.
//!
//! Each experiment family is a plain function in [`experiments`] returning
//! typed rows; [`report::execute`] turns a [`SweepConfig`] into CSV text and
//! an optional figure; [`cli::run`] is the `qpid` binary.

pub mod cli;
pub mod config;
mod error;
pub mod experiments;
pub mod output;
pub mod plot;
pub mod report;

pub use config::{Experiment, SweepConfig};
pub use error::ExpError;
pub use report::{execute, Report};

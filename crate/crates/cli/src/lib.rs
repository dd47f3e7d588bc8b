//! File formats, reports and the command-line driver for `cuspline-core`.

mod app;
pub mod formats;
pub mod report;

pub use app::{run, Outcome};

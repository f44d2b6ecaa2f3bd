//! Command implementations behind the `lowdin-kit` binary.

pub mod commands;
pub mod error;
pub mod format;
pub mod paper_check;
pub mod report;
pub mod sweep;

pub use error::{CliError, CliResult};
pub use report::AnalysisReport;
pub use sweep::SweepSpec;

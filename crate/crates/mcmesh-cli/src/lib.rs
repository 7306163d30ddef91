//! Command-line pipeline around the mcmesh library: scenario execution,
//! artifact emission, and metrics comparison.

pub mod compare;
pub mod scenario;

pub use compare::{compare_files, render_summary, ColumnSummary, COMPARE_CSV_HEADER};
pub use scenario::{execute, CliError, CliResult, ErrorKind, Scenario, Stage, TREES_CSV_HEADER};

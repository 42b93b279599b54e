//! Experiment runner around `symfact`: per-matrix diagnostics, the three
//! result tables, size sweeps, the bound-check suite, and the plain-text
//! matrix and CSV formats.

mod diagnostics;
mod error;
mod io;
mod report;
mod suite;
mod sweep;

pub use diagnostics::{diagnose, diagnose_family, diagnose_partition, Diagnosis, DiagnosticsRow};
pub use error::{LabError, Result};
pub use io::{format_matrix, parse_matrix, read_matrix, write_matrix};
pub use report::{format_sci, format_table, read_csv, write_csv, CSV_HEADER};
pub use suite::{
    fixture_set, run_checks, run_checks_with, CheckEntry, CheckOptions, CheckScope,
    CheckSuiteReport, PERTURBATION_LEVELS, PERTURBATION_SEED,
};
pub use sweep::{run_sweep, run_table, TableId};

/// Process exit codes shared by the binary and the check suite.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const VIOLATED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const NUMERICAL: i32 = 3;
}

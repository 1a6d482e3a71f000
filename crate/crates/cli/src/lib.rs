//! Command-line front end for the `quasiconst` toolkit: spec-file loading,
//! the subcommands and their reports.

pub mod commands;
pub mod input;
pub mod report;

pub use commands::{BoundsTarget, CliError, Predicate};
pub use input::{DatumSpecFile, InputError, LoadedDatum};
pub use report::Report;

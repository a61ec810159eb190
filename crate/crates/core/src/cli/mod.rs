//! Spec parsing, the built-in catalog, and command orchestration behind the
//! `morphic` binary.

pub mod build;
pub mod catalog;
pub mod run;
pub mod spec;
pub mod suite;

pub use build::{build_module, build_ring, BuiltRing};
pub use catalog::{catalog, CatalogEntry};
pub use run::{run_command, CliError, Command, CommandInput, OutputFormat, Report, RunConfig};
pub use spec::{parse_spec, SpecAst, SpecError};
pub use suite::{run_suite, SuiteReport};

//! Command-line front end over `dst-core` and `bfqc`.
//!
//! BBAs are read from JSON [`BbaDocument`]s. Every numeric command writes a
//! [`ResultDocument`] to stdout; failures print a one-line JSON diagnostic
//! to stderr and exit with 1 (validation), 2 (computation) or 3 (I/O).

pub mod args;
pub mod commands;
pub mod document;
pub mod error;
pub mod trend;

pub use args::Cli;
pub use commands::execute;
pub use document::{BbaDocument, Payload, ResultDocument};
pub use error::CliError;

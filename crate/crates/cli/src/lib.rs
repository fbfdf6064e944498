//! Command-line front end for `lintersect`.

pub mod args;
pub mod commands;
pub mod record;

pub use args::Cli;
pub use commands::{run, CliError, Status};

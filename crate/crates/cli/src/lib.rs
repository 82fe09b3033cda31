//! Library side of the `fubpark` command: argument definitions, the command
//! implementations and the JSON record type.

pub mod args;
pub mod commands;
pub mod record;

pub use args::Cli;
pub use commands::{run, CliError};
pub use record::{Meta, Object, OutputRecord};

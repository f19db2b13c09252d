//! Driver for `cousinforge-core`: commands shared by the command line and
//! JSON task files, an on-disk result cache, and the certification battery.

pub mod cache;
pub mod commands;
mod error;
pub mod task;
pub mod verify;

pub use commands::{Command, Outcome, Settings};
pub use error::{CliError, CliResult};
pub use task::TaskFile;

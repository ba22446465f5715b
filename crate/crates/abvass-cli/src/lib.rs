//! File formats and command dispatch for the `abvass` binary.

pub mod commands;
pub mod formats;

pub use commands::{run, Cli};

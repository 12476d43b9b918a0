//! Command-line front end: expression parsing, report encodings and the
//! check battery.

pub mod commands;
pub mod parse;
pub mod report;
pub mod suite;
pub mod tolerances;

pub use commands::{run_command, Outcome};

//! Spec files, reports and the command surface of the `garside` tool.

pub mod dot;
pub mod format;
pub mod report;
pub mod run;

pub use format::{parse_spec, print_spec, ParseError};
pub use report::Report;
pub use run::{run, CliError, Command, DotTarget, Options};

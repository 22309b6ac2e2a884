//! File formats, reports, verification and subcommands for the `p5oct`
//! binary.

pub mod commands;
pub mod instance;
pub mod report;
pub mod selftest;
pub mod verify;

pub use commands::CliError;
pub use instance::{parse_instance, serialize_instance, ParseError};
pub use report::SolveReport;
pub use verify::{verify_report, VerifyError};

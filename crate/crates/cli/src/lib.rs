//! Command logic behind the `dwork` binary: per-method point counts of
//! Dwork hypersurfaces, identity checks, and JSON/CSV reports.

pub mod commands;
pub mod report;

pub use commands::{
    count, parse_lambda, table, verify, CliError, Method, Outcome, Request, BRUTE_LIMIT, DEFAULT_TOLERANCE,
};
pub use report::{CountCell, Format, Report, VerifyRow};

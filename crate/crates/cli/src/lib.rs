//! Text format, reports and subcommands of the `flavorkit` tool.

pub mod commands;
pub mod corpus;
pub mod format;
pub mod report;

pub use commands::{run, Command, Direction, Options, RunError};
pub use report::{Format, Report};

/// Exit code of a finished run: 0 when every check passed, 1 otherwise, 2 for input errors.
pub fn exit_code(r: &Result<Report, RunError>) -> i32 {
    match r {
        Ok(rep) if rep.passed() => 0,
        Ok(_) => 1,
        Err(_) => 2,
    }
}

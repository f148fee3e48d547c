//! Batch front end over `quatrange-core`: matrix files, reports, CSV/SVG
//! artifacts, run manifests and the verification suites.

pub mod fixtures;
pub mod io;
pub mod manifest;
pub mod report;
pub mod svg;
pub mod verify;

/// Exit code for a run whose verification checks all passed.
pub const EXIT_OK: i32 = 0;
/// Exit code for unreadable input or violated preconditions.
pub const EXIT_INPUT: i32 = 2;
/// Exit code when at least one verification check failed.
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] quatrange_core::Error),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_INPUT
    }
}

//! The `pytuple` command line: argument grammar, command execution and exit codes.

pub mod commands;
pub mod render;

pub use commands::{execute, Cli, Outcome};
pub use render::{Document, Format, Value};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const BUDGET: i32 = 3;
    pub const VERIFY_FAILED: i32 = 4;
}

/// Environment variable overriding the factorization effort limit.
pub const BUDGET_ENV: &str = "PYTUPLE_FACTOR_BUDGET";

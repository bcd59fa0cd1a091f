//! Library side of the `ore-curvature` command-line tool: operator files,
//! report types and the subcommands.

pub mod bench;
pub mod commands;
pub mod error;
pub mod input;
pub mod report;
pub mod verify;

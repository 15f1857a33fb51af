//! Command-line front end: subcommands, report rendering and the
//! randomized verification suites.

pub mod commands;
pub mod golden;
pub mod report;
pub mod suites;

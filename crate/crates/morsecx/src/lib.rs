//! File formats, JSON reports, the example corpus and multi-threaded
//! drivers around `morsecx-core`, plus the `morsecx` command-line tool.

pub mod cli;
pub mod corpus;
pub mod format;
pub mod parallel;
pub mod report;

pub use morsecx_core as core;

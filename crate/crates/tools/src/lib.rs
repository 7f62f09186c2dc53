//! File format, reports and the `ccc` command line on top of `ccc-core`.

pub mod cli;
pub mod fixtures;
pub mod format;
pub mod report;

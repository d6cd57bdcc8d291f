//! Command-line driver for `ulrich-core`: argument grammar, configuration,
//! and deterministic JSON / markdown reports.

pub mod args;
pub mod commands;
pub mod config;
pub mod parse;
pub mod report;

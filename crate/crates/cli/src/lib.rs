//! Command-line harness for pebblekit: campaigns over registry claims,
//! reproducible JSON/CSV reports and graph files.

pub mod campaign;
pub mod cli;
pub mod graph_io;
pub mod input;
pub mod registry;
pub mod report;

//! Command-line front end: the manifest language, its translation into
//! library objects, and versioned reports.

pub mod cli;
pub mod commands;
pub mod dsl;
pub mod error;
pub mod model;
pub mod output;

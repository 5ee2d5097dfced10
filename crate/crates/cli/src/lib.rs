//! Command-line front end for `lieharm`: JSON specs in, reports out.

pub mod commands;
pub mod error;
pub mod spec;

pub use error::CliError;

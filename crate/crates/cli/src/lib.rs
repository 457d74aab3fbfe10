//! File formats and command implementations behind the `tropweier` binary.
//!
//! Graphs and divisors are read from JSON, points from the command line as
//! `vertex:NAME` or `edge:ID@p/q`. Every command returns a JSON value (or a
//! CSV string) so the binary only has to print it.

pub use tropweier_core as core;

pub mod commands;
pub mod error;
pub mod io;

pub use error::{CliError, ErrorKind};

//! Library half of the `givens` binary: command implementations and the
//! on-disk formats, exposed so integration tests can drive them directly.

pub mod commands;
pub mod io;

//! Census, classification tables, verification suites and the command line
//! front end for `flipclass-core`.

pub mod census;
pub mod cli;
pub mod format;
pub mod pipeline;
pub mod verify;

//! File formats, verification suites and the command-line front end for
//! [`xqdiag_core`].

pub mod cli;
pub mod format;
pub mod suite;

pub use xqdiag_core as core;

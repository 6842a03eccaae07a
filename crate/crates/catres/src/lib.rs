//! File formats, command-line driver and a threaded executor for
//! `catres-core`.

pub mod cli;
pub mod exec;
pub mod format;

pub use catres_core as core;

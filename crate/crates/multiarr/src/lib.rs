//! File formats, command line and batch experiments on top of
//! `multiarr-core`.

pub mod cli;
pub mod experiment;
pub mod format;

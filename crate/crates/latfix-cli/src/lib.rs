//! File formats, expression parsing and command plumbing for the
//! `latfix` binary. The numerics all live in the `latfix` library; this
//! crate only moves data between files, flags and reports.

pub mod commands;
pub mod config;
pub mod examples_builtin;
pub mod expr;
pub mod gridcsv;
pub mod latfile;
pub mod report;

//! Batch front end: spec-file parsing, report envelopes and the
//! `classify`, `verify` and `aus` commands.

pub mod commands;
pub mod report;
pub mod spec;

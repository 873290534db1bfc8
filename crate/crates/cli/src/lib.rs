//! Library surface of the `kvp` command-line tool: the algebra file format,
//! the run-report document, and the command implementations. The binary in
//! `main.rs` is a thin argument-parsing shell over [`commands`].

pub mod algebra_file;
pub mod commands;
pub mod report;

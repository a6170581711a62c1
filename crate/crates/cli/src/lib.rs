//! Library side of the `pgq` command-line tool: configuration, output
//! documents, subcommands and the verification sweep.

pub mod commands;
pub mod config;
pub mod io;
pub mod verify;

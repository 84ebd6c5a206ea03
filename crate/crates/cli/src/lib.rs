//! Command-line front end: JSON documents in, deterministic result documents out.

pub mod doc;
pub mod run;
pub mod suite;

pub use run::{execute_bytes, run_command, Command, Invocation, ResultDocument, Status};

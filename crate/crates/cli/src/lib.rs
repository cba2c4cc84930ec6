//! File formats, generators, emitters and the verification harness behind the `graft` binary.

pub mod commands;
pub mod document;
pub mod emit;
pub mod enumerate;
pub mod error;
pub mod generate;
pub mod verify;

pub use error::{CliError, Result};

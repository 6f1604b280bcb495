//! Library half of the `kmhecke` binary, so tests can drive it directly.

pub mod commands;
pub mod config;
pub mod error;

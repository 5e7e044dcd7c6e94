//! Instance files, reproducible generators, reference-example
//! reproduction, and conjecture checks. The `dimatroid-lab` binary is a
//! thin shell over this module.

pub mod checks;
pub mod generate;
pub mod instance;

pub use checks::{CheckResult, Verdict};
pub use instance::Instance;

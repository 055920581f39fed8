//! Command-line front end for the operator calculus core: family
//! construction, operator extraction, decomposition and identity checks.

pub mod cli;
pub mod error;
pub mod family;
pub mod json;
pub mod literal;
pub mod render;
pub mod suites;

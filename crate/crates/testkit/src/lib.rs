//! Reference implementations, published tables and whole-property checks
//! shared by the integration and acceptance tests.

pub mod brute;
pub mod checks;
pub mod tables;

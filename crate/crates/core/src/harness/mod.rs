//! Script language, claim suites and report emission.

pub mod claims;
pub mod corpus;
pub mod dsl;
pub mod report;

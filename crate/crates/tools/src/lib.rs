//! Command line support for `e6core`: the Weyl group cache, quasitorus spec
//! files, grading and verification reports, and the verification checks.

pub mod cache;
pub mod checks;
pub mod error;
pub mod gradespec;
pub mod report;
pub mod session;
pub mod tables;

pub use e6core;

//! Exact computations with gradings on the exceptional simple Lie algebra of type E6.
//!
//! The crate is `no_std` and only needs an allocator. Everything is exact:
//! scalars live in the cyclotomic field `Q(ζ_36)` and lattice questions are
//! answered with integer Smith normal forms.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

/// Version of this crate, part of every cache key.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub mod catalog;
pub mod exactfield;
pub mod gradings;
pub mod liecore;
pub mod linalg;
pub mod models;
pub mod smith;
pub mod weyl;

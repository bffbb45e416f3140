//! Garside normal forms in left cancellative small categories, the character
//! space of such a category as normal words, and bounded deciders for the
//! groupoid criteria built on top of it.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is a pure function
//! of immutable inputs, so values may be shared freely across threads.

#![no_std]

extern crate alloc;

pub mod artin;
pub mod cat;
pub mod chars;
mod error;
#[cfg(test)]
mod fixtures;
pub mod garside;
pub mod invariants;
pub mod kgraph;
pub mod props;
pub mod spec;
pub mod verdict;

pub use cat::{AtomId, BackendKind, Category, Morphism, ObjId};
pub use error::Error;
pub use garside::{GarsideFamily, LetterId, NormalWord};
pub use spec::CategorySpec;
pub use verdict::{Basis, Status, Verdict};

pub type Result<T, E = Error> = core::result::Result<T, E>;

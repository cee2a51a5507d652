//! Grammar-compressed words and the word problems they make tractable.
//!
//! Words are given by straight line programs or composition systems
//! ([`program::Program`]). Truncations are eliminated by [`hagenah`],
//! equality is decided by [`plandowski`], free reduction by [`freegroup`],
//! and [`groups`] builds the applications on top: automorphisms of free
//! groups, braids, free-by-cyclic groups and mapping class subgroups.

pub mod alphabet;
pub mod error;
pub mod families;
pub mod freegroup;
pub mod groups;
pub mod hagenah;
pub mod plandowski;
pub mod program;
pub mod query;
pub mod slp;
pub mod text;

pub use alphabet::{Alphabet, Letter};
pub use error::{Error, Result};
pub use program::{Grammar, Item, NtId, Production, Program, ProgramKind, Ref, Trunc};

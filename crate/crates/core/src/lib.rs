//! Finite crossed modules of groups and computational tools for their
//! localizations: abelianization, nullification, localization at a
//! regular epimorphism, flatness tests for short exact sequences and
//! admissibility scans.
//!
//! Groups are dense Cayley tables ([`group::FiniteGroup`]). Finitely
//! generated abelian groups have their own Smith-normal-form backend in
//! [`fgab`].

pub mod catalogue;
pub mod error;
pub mod fgab;
pub mod flat;
pub mod group;
pub mod limits;
pub mod localize;
pub mod xab;
pub mod xmod;

pub use error::{Error, Level, Result};
pub use limits::Limits;

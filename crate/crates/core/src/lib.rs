//! Two-subsemigroup covers of groups and the left orders they induce.
//!
//! A group is the union of two proper subsemigroups exactly when it has a
//! nontrivial left-orderable quotient. This crate makes both directions
//! executable on concrete group models:
//!
//! * [`order`] turns a quotient onto `ℤʳ` (ordered lexicographically) into an
//!   explicit cover, combines orders lexicographically and merges covers;
//! * [`cover`] normalizes an arbitrary cover, refines it along conjugates of
//!   its maximal subgroup and extracts a left-order witness;
//! * [`covering`] checks the finite consequences: torsion groups admit no
//!   such cover, and their semigroup and subgroup covering numbers agree.
//!
//! Statements about infinite models are verified on balls of the Cayley graph
//! and always carry the radius they were checked at.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod bitset;
pub mod cone;
pub mod cover;
pub mod covering;
pub mod error;
pub mod group;
pub mod order;
pub mod presentation;
pub mod snf;

pub use bitset::BitSet;
pub use cone::{ConeSet, ExplicitMode, Region, Status, Verdict};
pub use cover::{CoverFlags, CoverPair, DescentOutcome, DescentState};
pub use error::{Error, Lemma, Result};
pub use group::{Ball, Element, FiniteGroup, GroupModel, Homomorphism, Letter, Word};
pub use order::LeftOrderWitness;
pub use presentation::PresentationData;

/// Default cap on the number of elements a ball may hold.
pub const DEFAULT_BALL_CAP: usize = 1_000_000;

/// Default verification radius for ball-local checks.
pub const DEFAULT_RADIUS: u32 = 6;

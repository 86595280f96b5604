//! Exact combinatorics of finite Coxeter groups, chamber systems and
//! incidence geometries.
//!
//! The crate enumerates finite Coxeter groups with exact arithmetic, solves
//! the word problem via ShortLex normal forms, partitions groups into
//! parabolic double cosets with minimal-length representatives, runs gallery
//! and projection computations on chamber systems, and checks the defining
//! axioms of generalized polygons, polar spaces and metasymplectic-style
//! four-sorted geometries on desk-scale models (the thin F4 complex, W(2),
//! the rank-3 symplectic polar space over GF(2)).
//!
//! Every checker is exhaustive at these scales: no sampling, no floating
//! point, no randomness in the verdicts.

pub mod cache;
pub mod chambers;
pub mod coxeter;
pub mod geometry;
pub mod parabolic;
pub mod report;
pub mod verify;

use serde::{Deserialize, Serialize};
use std::fmt;

/// Identifier of an element of a multi-sorted structure: a type slot plus an
/// index within that type.  Used uniformly by chamber systems (vertex ids of
/// chamber flags) and incidence geometries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ElementId {
    pub type_idx: u8,
    pub index: u32,
}

impl ElementId {
    pub fn new(type_idx: u8, index: u32) -> Self {
        Self { type_idx, index }
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.type_idx, self.index)
    }
}

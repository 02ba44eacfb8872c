//! Dualization over posets and distributive lattices, plus incremental
//! enumeration of minimal closed sets under monotone properties.
//!
//! The central object is a pair of families over one poset: a family of
//! ideals and a family of filters in which every ideal meets every
//! filter. The pair is *dual* when no further ideal can avoid all
//! members of the first family while meeting all members of the second;
//! `engine::check_dual` decides this in quasi-polynomial time and
//! produces a witness ideal otherwise. `lattice` reduces the analogous
//! question on distributive lattices to the poset form, and `mining`
//! builds incremental minimal-closed-set enumeration on top of the
//! duality test.

pub mod chi;
pub mod engine;
pub mod gen;
pub mod instance;
pub mod lattice;
pub mod mining;
pub mod oracle;
pub mod poset;
pub mod set;

#[cfg(test)]
pub(crate) mod testutil;

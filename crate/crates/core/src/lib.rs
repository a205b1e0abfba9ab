//! Lattices of intermediate rings of finite commutative ring extensions.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`] holds finite lattices given by covers and the order-theoretic
//!   predicates used throughout (gradedness, distributivity, Loewy series,
//!   left modularity, supersolvability).
//! * [`ring`] provides table-backed finite commutative rings, ring extensions
//!   and enumeration of the lattice of intermediate subrings.
//! * [`analysis`] classifies cover steps of that lattice, computes the
//!   t-closure and checks the chain-length criteria on an extension.
//! * [`group`] and [`tower`] give the Galois-side instances: subgroup lattices
//!   of permutation groups and minimal-polynomial lattices of finite-field
//!   towers.
//! * [`verify`] runs all checks over a deterministic corpus.

pub mod analysis;
pub mod group;
pub mod lattice;
pub mod ring;
pub mod tower;
pub mod verify;
pub(crate) mod fpoly;

//! Combinatorics of blocks of Ariki-Koike algebras.
//!
//! The crate implements abacus arithmetic for β-sets, charged
//! multipartitions with their residues and crystal data, the extended affine
//! Weyl group actions, Uglov's map and rank-level duality, moving vectors and
//! the classification of core blocks, the Scopes-equivalence decision
//! procedure, simple-module counts via Kostka numbers, and canonical bases of
//! level-ℓ Fock spaces with the resulting v-decomposition numbers.

pub mod betaset;
pub mod blocks;
pub mod cli;
pub mod error;
pub mod fock;
pub mod multipartition;
pub mod scopes;
pub mod simples;
pub mod uglov;
pub mod weyl;

pub use error::{Error, Result};

//! Exact combinatorics of positive root systems.
//!
//! The crate builds positive root systems in integer coordinates, decides
//! sum-preserving embeddings between them, enumerates splints (partitions of a
//! positive system into two embedded stems), classifies them up to the Weyl
//! group, and reproduces the branching phenomenon that motivates splints.
//!
//! Module map:
//! - [`rootsys`]: coordinate presentations, sum triples, components, Gram matrices
//! - [`catalog`]: abstract stem types and their names
//! - [`embed`]: embedding search and metric classification
//! - [`splint`]: splint enumeration, descriptors and the reference table
//! - [`weyl`]: Weyl groups as signed-root permutations, splint classes
//! - [`branch`]: weight multiplicities and restriction to subsystems
//! - [`cli`]: command-line front end and JSON reports

pub mod branch;
pub mod catalog;
pub mod cli;
pub mod embed;
pub mod error;
pub mod rootsys;
pub mod splint;
pub mod weyl;

pub use error::{Error, Result};

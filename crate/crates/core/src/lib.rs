//! Exact graphical Bell numbers and Bell-number inequalities.
//!
//! For a graph `G` the crate computes the Stirling profile `S(G, k)` (the number
//! of partitions of the vertices into `k` stable sets), its sum `B(G)`, the
//! weighted sum `T(G) = sum_k k S(G, k)` and the average `A(G) = T(G) / B(G)`,
//! all in exact arithmetic. Closed forms for paths, trees, cycles and
//! tadpole-like `H(n, r)` graphs are provided independently of the generic
//! engine, and [`verifier`] scans a catalogue of inequalities between Bell
//! numbers that follow from comparing `A` across those families.

pub mod canon;
pub mod cli;
pub mod closed_forms;
pub mod engine;
pub mod error;
pub mod graph;
pub mod rational;
pub mod selftest;
pub mod sequences;
pub mod verifier;

pub use canon::{canonical_key, CanonicalKey};
pub use closed_forms::FamilyAggregates;
pub use engine::{brute_force_profile, ColoringEngine, StirlingProfile};
pub use error::{Error, Result};
pub use graph::{FamilyKind, FamilySpec, Graph, VertexKind};
pub use rational::ExactRational;
pub use sequences::BigSeqCache;
pub use verifier::{InequalityId, InequalityReport};

//! Partitions and covers of the discrete cube `[n]^d` by sub-boxes.
//!
//! [`geometry`] holds the types and the verifier, [`constructions`] the
//! explicit partitions, [`bounds`] closed-form bounds, [`search`] exact and
//! heuristic cover search, [`graphq`] the two-coloured graph reduction, and
//! [`format`]/[`render`] file formats and pictures.

pub mod bounds;
pub mod constructions;
pub mod format;
pub mod geometry;
pub mod graphq;
pub mod render;
pub mod search;

pub use constructions::{IntermediatePartition, PiercingVector};
pub use format::PartitionDocument;
pub use geometry::{Ambient, BoxFamily, CoverMode, DiscreteBox, VerificationReport};
pub use graphq::TwoColoredGraph;
pub use search::{CandidateKind, CoverInstance, SearchBudget, SearchResult};

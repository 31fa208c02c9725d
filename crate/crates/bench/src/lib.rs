//! Benchmark inputs.

use boxkit::constructions::{intermediate_library, partition_25, product, Figure};
use boxkit::geometry::{Ambient, BoxFamily, CoverMode};
use boxkit::search::{CandidateKind, CoverInstance};
use boxkit::IntermediatePartition;

/// The 625-box odd proper partition of `[5]^6`.
pub fn product_625() -> BoxFamily {
    let p = partition_25();
    product(&p, &p).expect("cube sides match")
}

/// Odd proper bricks of `[5]^2`, exact partition.
pub fn odd_brick_instance() -> CoverInstance {
    CoverInstance::from_kind(Ambient::cube(5, 2).unwrap(), CandidateKind::OddProperBrick, 1, CoverMode::Exact).unwrap()
}

pub fn fig6(k: usize) -> IntermediatePartition {
    intermediate_library(Figure::Fig6, k).unwrap()
}

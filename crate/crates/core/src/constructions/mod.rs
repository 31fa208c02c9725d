//! Explicit partitions: the trivial odd partition, grids, the 25-box
//! partition of `[5]^3`, products and lifts, the quadrant recursion for
//! piercing partitions, and intermediate (labelled) partitions together with
//! the stacking step and their realization as concrete partitions.

mod intermediate;
mod library;
mod piercing;

use thiserror::Error;

use crate::geometry::{Ambient, BoxFamily, DiscreteBox, GeometryError, MAX_SIDE};

pub use intermediate::{
    label_type_counts, predicted_size, realize, stack_lemma, Corner, CornerSpec,
    IntermediatePartition, PiercingVector,
};
pub use library::{intermediate_library, Figure};
pub use piercing::{piercing_construction, piercing_size, quadrant_construction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("side length must be odd and at least 3, got {0}")]
    BadOddSide(usize),
    #[error("piercing target must be at least {min}, got {got}")]
    TargetTooSmall { min: usize, got: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("families must live on cubes of equal side; got {left} and {right}")]
    SideMismatch { left: String, right: String },
    #[error("cannot lift a partition of side {from} to smaller side {to}")]
    LiftShrinks { from: usize, to: usize },
    #[error("construction needs side {required}, above the supported maximum {MAX_SIDE}")]
    Sizing { required: usize },
    #[error("parts {first} and {second} overlap or the parts do not cover the ambient")]
    NotAPartition { first: usize, second: usize },
    #[error("point {point} is not covered by any part")]
    Uncovered { point: String },
    #[error("part {part} is not a brick")]
    NotBrick { part: usize },
    #[error("corner specification must have {expected} entries")]
    BadCorner { expected: usize },
    #[error("corners X and Y must differ")]
    SameCorners,
    #[error("no proper sub-brick at corner X is a union of whole parts; part {part} contains X and spans an entire axis")]
    NoProperCornerBrick { part: usize },
}

/// Splits `1..=n` into `parts` consecutive intervals whose lengths differ by
/// at most one (longer ones first).
pub(crate) fn even_split(n: usize, parts: usize) -> Vec<(usize, usize)> {
    let base = n / parts;
    let extra = n % parts;
    let mut out = Vec::with_capacity(parts);
    let mut lo = 1;
    for i in 0..parts {
        let len = base + usize::from(i < extra);
        out.push((lo, lo + len - 1));
        lo += len;
    }
    out
}

/// All products of one interval per axis, first axis most significant.
fn product_of_splits(splits: &[Vec<(usize, usize)>]) -> Vec<DiscreteBox> {
    let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for axis in splits {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&iv| {
                    let mut p = prefix.clone();
                    p.push(iv);
                    p
                })
            })
            .collect();
    }
    out.iter()
        .map(|ranges| DiscreteBox::brick(ranges).expect("split intervals are valid"))
        .collect()
}

/// Partition of `[n]^d` into `3^d` odd proper bricks, each side split as
/// `{1}, {2..n-1}, {n}`.
pub fn trivial_odd_partition(n: usize, d: usize) -> Result<BoxFamily, ConstructionError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(ConstructionError::BadOddSide(n));
    }
    if d == 0 {
        return Err(ConstructionError::ZeroDimension);
    }
    let ambient = Ambient::cube(n, d)?;
    let split = vec![(1, 1), (2, n - 1), (n, n)];
    Ok(BoxFamily::new(ambient, product_of_splits(&vec![split; d]))?)
}

/// The `k^d` grid partition of `[k]^d`.
pub fn grid_partition(d: usize, k: usize) -> Result<BoxFamily, ConstructionError> {
    grid_partition_in(d, k, k)
}

/// The `k^d` grid partition of `[n]^d`, each side split into `k` near-equal
/// intervals.
pub fn grid_partition_in(d: usize, k: usize, n: usize) -> Result<BoxFamily, ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::TargetTooSmall { min: 2, got: k });
    }
    if d == 0 {
        return Err(ConstructionError::ZeroDimension);
    }
    if n < k {
        return Err(ConstructionError::Sizing { required: k });
    }
    let ambient = Ambient::cube(n, d)?;
    Ok(BoxFamily::new(ambient, product_of_splits(&vec![even_split(n, k); d]))?)
}

const PARTITION_25: [[&[usize]; 3]; 25] = [
    [&[1, 2, 3], &[1, 2, 3], &[1]],
    [&[1, 2, 3], &[1, 2, 3], &[2]],
    [&[2, 4, 5], &[1, 4, 5], &[3]],
    [&[2, 3, 5], &[2, 3, 5], &[4]],
    [&[1, 2, 4], &[1, 2, 4], &[5]],
    [&[1, 2, 5], &[1], &[4]],
    [&[1], &[1, 2, 5], &[3]],
    [&[1], &[2, 4, 5], &[4]],
    [&[2, 4, 5], &[2], &[3]],
    [&[2, 4, 5], &[3], &[3]],
    [&[2, 3, 4], &[3], &[5]],
    [&[3], &[2, 3, 4], &[3]],
    [&[3], &[2, 4, 5], &[5]],
    [&[4], &[1, 2, 3], &[1, 2, 4]],
    [&[5], &[1, 2, 3], &[1, 2, 5]],
    [&[2, 4, 5], &[4], &[1, 2, 4]],
    [&[2, 4, 5], &[5], &[1, 2, 5]],
    [&[1], &[4], &[1, 2, 3]],
    [&[1], &[5], &[1, 2, 5]],
    [&[3], &[4], &[1, 2, 4]],
    [&[3], &[5], &[1, 2, 3]],
    [&[1], &[3], &[3, 4, 5]],
    [&[3], &[1], &[3, 4, 5]],
    [&[4], &[5], &[4]],
    [&[5], &[4], &[5]],
];

/// The 25 odd proper boxes partitioning `[5]^3`, in their published order.
pub fn partition_25() -> BoxFamily {
    let boxes = PARTITION_25
        .iter()
        .map(|sets| DiscreteBox::from_sets(sets).expect("fixture boxes are valid"))
        .collect();
    BoxFamily::new(Ambient::cube(5, 3).expect("valid ambient"), boxes).expect("fixture fits [5]^3")
}

/// Product family `{B x C}` over `[n]^(d1+d2)`; box order is row-major in
/// `(p1, p2)`.
pub fn product(p1: &BoxFamily, p2: &BoxFamily) -> Result<BoxFamily, ConstructionError> {
    let (n1, n2) = (p1.ambient().cube_side(), p2.ambient().cube_side());
    if n1.is_none() || n1 != n2 {
        return Err(ConstructionError::SideMismatch {
            left: p1.ambient().to_string(),
            right: p2.ambient().to_string(),
        });
    }
    let mut sides = p1.ambient().sides().to_vec();
    sides.extend_from_slice(p2.ambient().sides());
    let boxes = p1
        .boxes()
        .iter()
        .flat_map(|a| p2.boxes().iter().map(move |b| a.product(b)))
        .collect();
    Ok(BoxFamily::new(Ambient::new(sides)?, boxes)?)
}

/// Lifts a family on `[n]^d` to `[m]^d` by identifying the coordinate `n`
/// with the interval `n..=m` on every axis.
pub fn lift(p: &BoxFamily, m: usize) -> Result<BoxFamily, ConstructionError> {
    let n = p.ambient().cube_side().ok_or_else(|| ConstructionError::SideMismatch {
        left: p.ambient().to_string(),
        right: format!("[{m}]^{}", p.ambient().dim()),
    })?;
    if m < n {
        return Err(ConstructionError::LiftShrinks { from: n, to: m });
    }
    if m > MAX_SIDE {
        return Err(ConstructionError::Sizing { required: m });
    }
    let d = p.ambient().dim();
    let boxes = p
        .boxes()
        .iter()
        .map(|b| (0..d).fold(b.clone(), |acc, axis| acc.stretch(axis, n, m - n)))
        .collect();
    Ok(BoxFamily::new(Ambient::cube(m, d)?, boxes)?)
}

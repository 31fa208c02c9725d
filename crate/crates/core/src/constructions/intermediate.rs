//! Labelled partitions: every part carries per-axis piercing targets, and a
//! family is valid for `k` when the targets met along any axis-parallel line
//! add up to at least `k`. The stacking step builds a `(d+1)`-dimensional
//! one from a `d`-dimensional one, and realization fills every part with a
//! piercing construction for its targets.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::geometry::{
    mask_elements, verify_cover, Ambient, BoxFamily, CoverMode, DiscreteBox, MAX_SIDE,
};

use super::piercing::Planner;
use super::ConstructionError;

/// Per-axis piercing targets of one part; every entry is at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PiercingVector(Vec<usize>);

impl PiercingVector {
    pub fn new(labels: Vec<usize>) -> Result<Self, ConstructionError> {
        if let Some(&bad) = labels.iter().find(|&&a| a == 0) {
            return Err(ConstructionError::TargetTooSmall { min: 1, got: bad });
        }
        if labels.is_empty() {
            return Err(ConstructionError::ZeroDimension);
        }
        Ok(Self(labels))
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    fn extended(&self, last: usize) -> PiercingVector {
        let mut v = self.0.clone();
        v.push(last);
        PiercingVector(v)
    }
}

impl Deref for PiercingVector {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for PiercingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A partition of the ambient whose parts carry piercing vectors.
///
/// Parts are usually bricks; boxes with gaps are allowed so that covers
/// which cannot be made of bricks can still be described.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntermediatePartition {
    ambient: Ambient,
    parts: Vec<(DiscreteBox, PiercingVector)>,
}

impl IntermediatePartition {
    pub fn new(
        ambient: Ambient,
        parts: Vec<(DiscreteBox, PiercingVector)>,
    ) -> Result<Self, ConstructionError> {
        let d = ambient.dim();
        for (i, (b, label)) in parts.iter().enumerate() {
            b.check_within(&ambient)?;
            if label.len() != d {
                return Err(crate::geometry::GeometryError::BadLabel {
                    part: i + 1,
                    expected: d,
                }
                .into());
            }
        }
        let ip = Self { ambient, parts };
        ip.check_partition()?;
        Ok(ip)
    }

    fn check_partition(&self) -> Result<(), ConstructionError> {
        let report = verify_cover(&self.family(), 1, CoverMode::Exact);
        if report.is_partition {
            return Ok(());
        }
        let (point, count) = report.first_violation.expect("failed cover has a witness");
        if count == 0 {
            let coords: Vec<String> = point.iter().map(|x| x.to_string()).collect();
            return Err(ConstructionError::Uncovered {
                point: format!("({})", coords.join(",")),
            });
        }
        let owners: Vec<usize> = self
            .parts
            .iter()
            .enumerate()
            .filter(|(_, (b, _))| b.contains(&point))
            .map(|(i, _)| i + 1)
            .collect();
        Err(ConstructionError::NotAPartition {
            first: owners[0],
            second: owners[1],
        })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.ambient.dim()
    }

    pub fn parts(&self) -> &[(DiscreteBox, PiercingVector)] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The parts without their labels.
    pub fn family(&self) -> BoxFamily {
        let boxes = self.parts.iter().map(|(b, _)| b.clone()).collect();
        BoxFamily::new(self.ambient.clone(), boxes).expect("parts fit the ambient")
    }

    /// Index of the part containing `point`.
    pub fn part_at(&self, point: &[usize]) -> Option<usize> {
        self.parts.iter().position(|(b, _)| b.contains(point))
    }

    /// Mirror image along `axis`.
    pub fn reflect(&self, axis: usize) -> IntermediatePartition {
        let side = self.ambient.side(axis);
        IntermediatePartition {
            ambient: self.ambient.clone(),
            parts: self
                .parts
                .iter()
                .map(|(b, l)| (b.reflect(axis, side), l.clone()))
                .collect(),
        }
    }

    /// Duplicates coordinate `at` of `axis` `extra` more times.
    pub fn stretch(&self, axis: usize, at: usize, extra: usize) -> Result<Self, ConstructionError> {
        let mut sides = self.ambient.sides().to_vec();
        sides[axis] += extra;
        if sides[axis] > MAX_SIDE {
            return Err(ConstructionError::Sizing {
                required: sides[axis],
            });
        }
        Ok(IntermediatePartition {
            ambient: Ambient::new(sides)?,
            parts: self
                .parts
                .iter()
                .map(|(b, l)| (b.stretch(axis, at, extra), l.clone()))
                .collect(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Corner {
    Low,
    High,
}

/// A corner of the ambient: low or high end on every axis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CornerSpec(pub Vec<Corner>);

impl CornerSpec {
    pub fn new(corner: Vec<Corner>) -> Self {
        Self(corner)
    }

    /// Parses a string of `L`/`H` (or `0`/`1`) characters, one per axis.
    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                'L' | 'l' | '0' => Some(Corner::Low),
                'H' | 'h' | '1' => Some(Corner::High),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Coordinates of this corner in `ambient`.
    pub fn point(&self, ambient: &Ambient) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .map(|(axis, c)| match c {
                Corner::Low => 1,
                Corner::High => ambient.side(axis),
            })
            .collect()
    }
}

/// Tally of parts by their label type: the labels other than 1, sorted in
/// decreasing order.
pub fn label_type_counts(ip: &IntermediatePartition) -> BTreeMap<Vec<usize>, usize> {
    let mut counts = BTreeMap::new();
    for (_, label) in ip.parts() {
        let mut key: Vec<usize> = label.iter().copied().filter(|&a| a > 1).collect();
        key.sort_unstable_by(|a, b| b.cmp(a));
        *counts.entry(key).or_insert(0) += 1;
    }
    counts
}

fn full_targets(label: &[usize], k: usize, tail_dims: usize) -> Vec<usize> {
    let mut t = label.to_vec();
    t.extend(std::iter::repeat_n(k, tail_dims));
    t
}

/// Number of boxes [`realize`] produces: the sum over parts of the
/// construction size for the part's targets, with `tail_dims` extra axes of
/// target `k`.
pub fn predicted_size(
    ip: &IntermediatePartition,
    k: usize,
    tail_dims: usize,
) -> Result<u128, ConstructionError> {
    check_k(k)?;
    let mut planner = Planner::default();
    Ok(ip
        .parts()
        .iter()
        .map(|(_, label)| planner.size(&full_targets(label, k, tail_dims)))
        .sum())
}

fn check_k(k: usize) -> Result<(), ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::TargetTooSmall { min: 2, got: k });
    }
    Ok(())
}

/// Concrete partition of a `(d + tail_dims)`-cube obtained by filling each
/// part with a piercing construction for its targets. Every coordinate unit
/// is refined into a block so each part is wide enough for its filling.
pub fn realize(
    ip: &IntermediatePartition,
    k: usize,
    tail_dims: usize,
) -> Result<BoxFamily, ConstructionError> {
    check_k(k)?;
    let d = ip.dim();
    let dims = d + tail_dims;
    let mut planner = Planner::default();
    let blocks: Vec<_> = ip
        .parts()
        .iter()
        .map(|(_, label)| planner.build(&full_targets(label, k, tail_dims)))
        .collect();

    let mut scale = vec![1usize; d];
    let mut sides = vec![1usize; dims];
    for ((b, _), block) in ip.parts().iter().zip(&blocks) {
        for axis in 0..d {
            scale[axis] = scale[axis].max(block.sides[axis].div_ceil(b.factor_len(axis)));
        }
        for axis in d..dims {
            sides[axis] = sides[axis].max(block.sides[axis]);
        }
    }
    for axis in 0..d {
        sides[axis] = ip.ambient().side(axis) * scale[axis];
    }
    let n = sides.iter().copied().max().unwrap_or(1).max(2);
    if n > MAX_SIDE {
        return Err(ConstructionError::Sizing { required: n });
    }

    let mut boxes = Vec::new();
    for ((part, _), block) in ip.parts().iter().zip(&blocks) {
        // Refined coordinates of this part along each axis, in order.
        let cells: Vec<Vec<usize>> = (0..dims)
            .map(|axis| {
                if axis < d {
                    let s = scale[axis];
                    mask_elements(part.mask(axis))
                        .flat_map(|x| ((x - 1) * s + 1)..=(x * s))
                        .collect()
                } else {
                    (1..=sides[axis]).collect()
                }
            })
            .collect();
        let fitted: Vec<usize> = cells.iter().map(Vec::len).collect();
        let filled = block.stretched(&fitted);
        for bx in &filled.boxes {
            let masks: Vec<u64> = bx
                .iter()
                .enumerate()
                .map(|(axis, &(lo, hi))| {
                    // Stretch the ambient's last coordinate up to the cube side.
                    let top = if cells[axis][hi - 1] == sides[axis] { n } else { cells[axis][hi - 1] };
                    let mut m = 0u64;
                    for &c in &cells[axis][lo - 1..hi] {
                        m |= 1 << (c - 1);
                    }
                    for c in cells[axis][hi - 1] + 1..=top {
                        m |= 1 << (c - 1);
                    }
                    m
                })
                .collect();
            boxes.push(DiscreteBox::from_masks(masks)?);
        }
    }
    Ok(BoxFamily::new(Ambient::cube(n, dims)?, boxes)?)
}

/// Candidate upper ends of a corner brick along `axis`: part ends short of
/// the full side.
fn corner_ends(ip: &IntermediatePartition, axis: usize) -> Vec<usize> {
    let side = ip.ambient().side(axis);
    let mut ends: Vec<usize> = ip
        .parts()
        .iter()
        .map(|(b, _)| b.factor_bounds(axis).1)
        .filter(|&e| e < side)
        .collect();
    ends.sort_unstable();
    ends.dedup();
    ends
}

/// Largest proper brick `[1, r_1] x ... x [1, r_d]` that is a union of whole
/// parts, with the indices of those parts.
fn corner_union(ip: &IntermediatePartition) -> Option<(Vec<usize>, Vec<usize>)> {
    let d = ip.dim();
    let ends: Vec<Vec<usize>> = (0..d).map(|axis| corner_ends(ip, axis)).collect();
    if ends.iter().any(Vec::is_empty) {
        return None;
    }
    let mut best: Option<(usize, usize, Vec<usize>, Vec<usize>)> = None;
    let mut choice = vec![0usize; d];
    loop {
        let r: Vec<usize> = (0..d).map(|a| ends[a][choice[a]]).collect();
        let region: Vec<u64> = r.iter().map(|&e| (1u64 << e) - 1).collect();
        let mut inside = Vec::new();
        let mut clean = true;
        for (i, (b, _)) in ip.parts().iter().enumerate() {
            let meets = (0..d).all(|a| b.mask(a) & region[a] != 0);
            let within = (0..d).all(|a| b.mask(a) & !region[a] == 0);
            if within {
                inside.push(i);
            } else if meets {
                clean = false;
                break;
            }
        }
        if clean {
            let volume: usize = r.iter().product();
            let better = match &best {
                None => true,
                Some((count, vol, _, _)) => (inside.len(), volume) > (*count, *vol),
            };
            if better {
                best = Some((inside.len(), volume, r.clone(), inside));
            }
        }
        let mut axis = d;
        loop {
            if axis == 0 {
                return best.map(|(_, _, r, parts)| (r, parts));
            }
            axis -= 1;
            choice[axis] += 1;
            if choice[axis] < ends[axis].len() {
                break;
            }
            choice[axis] = 0;
        }
    }
}

/// The stacking step: a `(d+1)`-dimensional intermediate partition made of
/// `ip` on the bottom and a reflected copy on top.
///
/// The top copy is mirrored so that the part at corner `y` lands at corner
/// `x`, and both copies are stretched so that this part covers the largest
/// proper corner brick at `x` that is a union of bottom parts. Along the new
/// axis the top copy of that part and the bottom parts outside the corner
/// brick get label `k - 1`; all others get 1. Parts are listed bottom copy
/// first, each copy in the order of `ip`.
pub fn stack_lemma(
    ip: &IntermediatePartition,
    x: &CornerSpec,
    y: &CornerSpec,
    k: usize,
) -> Result<IntermediatePartition, ConstructionError> {
    check_k(k)?;
    let d = ip.dim();
    for c in [x, y] {
        if c.dim() != d {
            return Err(ConstructionError::BadCorner { expected: d });
        }
    }
    if x == y {
        return Err(ConstructionError::SameCorners);
    }
    if let Some(i) = ip.parts().iter().position(|(b, _)| !b.is_brick()) {
        return Err(ConstructionError::NotBrick { part: i + 1 });
    }

    let flip_x: Vec<usize> = (0..d).filter(|&a| x.0[a] == Corner::High).collect();
    let flip_y: Vec<usize> = (0..d).filter(|&a| x.0[a] != y.0[a]).collect();
    let mut bottom = flip_x.iter().fold(ip.clone(), |acc, &a| acc.reflect(a));
    let mut top = flip_y.iter().fold(bottom.clone(), |acc, &a| acc.reflect(a));

    let origin = vec![1; d];
    let (ends, inside) = corner_union(&bottom).ok_or_else(|| ConstructionError::NoProperCornerBrick {
        part: bottom.part_at(&origin).map_or(0, |i| i + 1),
    })?;
    let anchor = top.part_at(&origin).expect("parts cover the corner");

    for axis in 0..d {
        let reach = top.parts()[anchor].0.factor_bounds(axis).1;
        if reach < ends[axis] {
            let extra = ends[axis] - reach;
            let side = bottom.ambient().side(axis);
            bottom = bottom.stretch(axis, side, extra)?;
            top = top.stretch(axis, reach, extra)?;
        }
    }

    let mut sides = bottom.ambient().sides().to_vec();
    sides.push(2);
    let low = DiscreteBox::from_masks(vec![0b01])?;
    let high = DiscreteBox::from_masks(vec![0b10])?;
    let mut parts = Vec::with_capacity(2 * ip.len());
    for (i, (b, label)) in bottom.parts().iter().enumerate() {
        let last = if inside.contains(&i) { 1 } else { k - 1 };
        parts.push((b.product(&low), label.extended(last)));
    }
    for (i, (b, label)) in top.parts().iter().enumerate() {
        let last = if i == anchor { k - 1 } else { 1 };
        parts.push((b.product(&high), label.extended(last)));
    }
    let stacked = IntermediatePartition {
        ambient: Ambient::new(sides)?,
        parts,
    };
    Ok(flip_x.iter().fold(stacked, |acc, &a| acc.reflect(a)))
}

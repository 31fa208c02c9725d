//! Ambient cubes, sub-boxes and the verification predicates over families of
//! boxes (partition, multiplicity cover, parity, brickness, piercing).
//!
//! Coordinates are 1-based. Every factor of a box is stored as a `u64`
//! bitmask where bit `x - 1` stands for coordinate `x`, so no axis may be
//! longer than [`MAX_SIDE`].

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::IntermediatePartition;

/// Largest supported side length of an ambient axis.
pub const MAX_SIDE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("ambient must have at least one axis")]
    EmptyAmbient,
    #[error("axis {axis} has side {side}; sides must lie in 2..={MAX_SIDE}")]
    BadSide { axis: usize, side: usize },
    #[error("box factor on axis {axis} is empty")]
    EmptyFactor { axis: usize },
    #[error("coordinate {value} on axis {axis} is outside 1..={side}")]
    OutOfRange { axis: usize, value: usize, side: usize },
    #[error("coordinate {value} appears twice in factor {axis}")]
    DuplicateElement { axis: usize, value: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("label vector of part {part} must have {expected} positive entries")]
    BadLabel { part: usize, expected: usize },
}

/// The ambient box `[n_1] x ... x [n_d]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ambient {
    sides: Vec<usize>,
}

impl Ambient {
    pub fn new(sides: Vec<usize>) -> Result<Self, GeometryError> {
        if sides.is_empty() {
            return Err(GeometryError::EmptyAmbient);
        }
        for (axis, &side) in sides.iter().enumerate() {
            if !(2..=MAX_SIDE).contains(&side) {
                return Err(GeometryError::BadSide { axis, side });
            }
        }
        Ok(Self { sides })
    }

    /// The cube `[n]^d`.
    pub fn cube(n: usize, d: usize) -> Result<Self, GeometryError> {
        Self::new(vec![n; d])
    }

    pub fn dim(&self) -> usize {
        self.sides.len()
    }

    pub fn sides(&self) -> &[usize] {
        &self.sides
    }

    pub fn side(&self, axis: usize) -> usize {
        self.sides[axis]
    }

    /// Common side length when every axis has the same length.
    pub fn cube_side(&self) -> Option<usize> {
        let n = self.sides[0];
        self.sides.iter().all(|&s| s == n).then_some(n)
    }

    /// Number of lattice points, `prod n_i`.
    pub fn volume(&self) -> usize {
        self.sides.iter().product()
    }

    pub(crate) fn full_mask(&self, axis: usize) -> u64 {
        mask_upto(self.sides[axis])
    }

    /// All points in lexicographic order (first axis most significant).
    pub fn points(&self) -> Points<'_> {
        Points {
            sides: &self.sides,
            next: Some(vec![1; self.sides.len()]),
        }
    }

    /// Position of `point` in the order produced by [`Ambient::points`].
    pub fn point_index(&self, point: &[usize]) -> usize {
        point
            .iter()
            .zip(&self.sides)
            .fold(0, |acc, (&x, &n)| acc * n + (x - 1))
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sides.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Odometer over the points of an ambient box.
pub struct Points<'a> {
    sides: &'a [usize],
    next: Option<Vec<usize>>,
}

impl Iterator for Points<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for axis in (0..succ.len()).rev() {
            if succ[axis] < self.sides[axis] {
                succ[axis] += 1;
                self.next = Some(succ);
                break;
            }
            succ[axis] = 1;
        }
        Some(current)
    }
}

pub(crate) fn mask_upto(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn mask_elements(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let bit = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(bit + 1)
    })
}

fn mask_is_interval(mask: u64) -> bool {
    let shifted = mask >> mask.trailing_zeros();
    shifted & (shifted.wrapping_add(1)) == 0
}

/// A sub-box `B_1 x ... x B_d`, each factor a nonempty set of coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscreteBox {
    factors: Vec<u64>,
}

impl DiscreteBox {
    /// Builds a box from explicit coordinate sets (any order, no repeats).
    pub fn from_sets<S: AsRef<[usize]>>(sets: &[S]) -> Result<Self, GeometryError> {
        let mut factors = Vec::with_capacity(sets.len());
        for (axis, set) in sets.iter().enumerate() {
            let mut mask = 0u64;
            for &value in set.as_ref() {
                if value == 0 || value > MAX_SIDE {
                    return Err(GeometryError::OutOfRange {
                        axis,
                        value,
                        side: MAX_SIDE,
                    });
                }
                let bit = 1u64 << (value - 1);
                if mask & bit != 0 {
                    return Err(GeometryError::DuplicateElement { axis, value });
                }
                mask |= bit;
            }
            if mask == 0 {
                return Err(GeometryError::EmptyFactor { axis });
            }
            factors.push(mask);
        }
        if factors.is_empty() {
            return Err(GeometryError::EmptyAmbient);
        }
        Ok(Self { factors })
    }

    pub fn from_masks(factors: Vec<u64>) -> Result<Self, GeometryError> {
        if factors.is_empty() {
            return Err(GeometryError::EmptyAmbient);
        }
        if let Some(axis) = factors.iter().position(|&m| m == 0) {
            return Err(GeometryError::EmptyFactor { axis });
        }
        Ok(Self { factors })
    }

    /// Product of inclusive intervals `lo..=hi`.
    pub fn brick(ranges: &[(usize, usize)]) -> Result<Self, GeometryError> {
        let sets: Vec<Vec<usize>> = ranges.iter().map(|&(lo, hi)| (lo..=hi).collect()).collect();
        Self::from_sets(&sets)
    }

    /// The whole ambient as a single (improper) box.
    pub fn full(ambient: &Ambient) -> Self {
        Self {
            factors: (0..ambient.dim()).map(|a| ambient.full_mask(a)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn masks(&self) -> &[u64] {
        &self.factors
    }

    pub fn mask(&self, axis: usize) -> u64 {
        self.factors[axis]
    }

    /// Sorted coordinates of factor `axis`.
    pub fn factor(&self, axis: usize) -> Vec<usize> {
        mask_elements(self.factors[axis]).collect()
    }

    pub fn factor_len(&self, axis: usize) -> usize {
        self.factors[axis].count_ones() as usize
    }

    /// Smallest and largest coordinate of factor `axis`.
    pub fn factor_bounds(&self, axis: usize) -> (usize, usize) {
        let m = self.factors[axis];
        (
            m.trailing_zeros() as usize + 1,
            64 - m.leading_zeros() as usize,
        )
    }

    pub fn contains(&self, point: &[usize]) -> bool {
        point
            .iter()
            .zip(&self.factors)
            .all(|(&x, &m)| (1..=64).contains(&x) && m & (1u64 << (x - 1)) != 0)
    }

    pub fn cardinality(&self) -> u128 {
        self.factors.iter().map(|m| u128::from(m.count_ones())).product()
    }

    pub fn is_interval(&self, axis: usize) -> bool {
        mask_is_interval(self.factors[axis])
    }

    pub fn is_brick(&self) -> bool {
        (0..self.dim()).all(|a| self.is_interval(a))
    }

    /// Checks dimension and coordinate ranges against `ambient`.
    pub fn check_within(&self, ambient: &Ambient) -> Result<(), GeometryError> {
        if self.dim() != ambient.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: ambient.dim(),
                found: self.dim(),
            });
        }
        for (axis, &m) in self.factors.iter().enumerate() {
            let side = ambient.side(axis);
            if m & !ambient.full_mask(axis) != 0 {
                let value = 64 - m.leading_zeros() as usize;
                return Err(GeometryError::OutOfRange { axis, value, side });
            }
        }
        Ok(())
    }

    /// Cartesian product `self x other`.
    pub fn product(&self, other: &DiscreteBox) -> DiscreteBox {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        DiscreteBox { factors }
    }

    /// Mirror axis `axis` of an ambient of side `side` (`x -> side + 1 - x`).
    pub fn reflect(&self, axis: usize, side: usize) -> DiscreteBox {
        let mut factors = self.factors.clone();
        factors[axis] = self.factors[axis].reverse_bits() >> (64 - side);
        DiscreteBox { factors }
    }

    /// Duplicates coordinate `at` of axis `axis` `extra` more times, shifting
    /// larger coordinates up. This is the preimage under the monotone
    /// surjection collapsing `at..=at+extra` onto `at`.
    pub fn stretch(&self, axis: usize, at: usize, extra: usize) -> DiscreteBox {
        let mut factors = self.factors.clone();
        factors[axis] = stretch_mask(self.factors[axis], at, extra);
        DiscreteBox { factors }
    }

    /// Replaces factor `axis` by its image under `map` (applied per element).
    pub fn map_factor(&self, axis: usize, map: impl Fn(usize) -> u64) -> DiscreteBox {
        let mut factors = self.factors.clone();
        factors[axis] = mask_elements(self.factors[axis]).fold(0, |acc, x| acc | map(x));
        DiscreteBox { factors }
    }
}

pub(crate) fn stretch_mask(mask: u64, at: usize, extra: usize) -> u64 {
    mask_elements(mask).fold(0u64, |acc, x| {
        if x < at {
            acc | 1 << (x - 1)
        } else if x == at {
            acc | (mask_upto(at + extra) & !mask_upto(at - 1))
        } else {
            acc | 1 << (x + extra - 1)
        }
    })
}

impl fmt::Display for DiscreteBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for axis in 0..self.dim() {
            if axis > 0 {
                f.write_str(" x ")?;
            }
            let elems: Vec<String> = self.factor(axis).iter().map(|x| x.to_string()).collect();
            write!(f, "{{{}}}", elems.join(","))?;
        }
        Ok(())
    }
}

/// Flags from the elementary definitions: proper, odd, brick.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoxFlags {
    pub proper: bool,
    pub odd: bool,
    pub brick: bool,
}

pub fn classify_box(b: &DiscreteBox, ambient: &Ambient) -> Result<BoxFlags, GeometryError> {
    b.check_within(ambient)?;
    let proper = (0..b.dim()).all(|a| b.mask(a) != ambient.full_mask(a));
    let odd = (0..b.dim()).all(|a| b.factor_len(a) % 2 == 1);
    Ok(BoxFlags {
        proper,
        odd,
        brick: b.is_brick(),
    })
}

/// Two product sets are disjoint iff they are disjoint in some coordinate.
pub fn boxes_disjoint(a: &DiscreteBox, b: &DiscreteBox) -> Result<bool, GeometryError> {
    if a.dim() != b.dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(a.masks().iter().zip(b.masks()).any(|(x, y)| x & y == 0))
}

/// An ordered list of boxes in a common ambient. Overlaps are allowed;
/// partition and cover properties are verified, never assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxFamily {
    ambient: Ambient,
    boxes: Vec<DiscreteBox>,
}

impl BoxFamily {
    pub fn new(ambient: Ambient, boxes: Vec<DiscreteBox>) -> Result<Self, GeometryError> {
        for b in &boxes {
            b.check_within(&ambient)?;
        }
        Ok(Self { ambient, boxes })
    }

    pub fn empty(ambient: Ambient) -> Self {
        Self {
            ambient,
            boxes: Vec::new(),
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn boxes(&self) -> &[DiscreteBox] {
        &self.boxes
    }

    pub fn into_boxes(self) -> Vec<DiscreteBox> {
        self.boxes
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    /// Concatenation of two families over the same ambient.
    pub fn concat(&self, other: &BoxFamily) -> Result<BoxFamily, GeometryError> {
        if self.ambient != other.ambient {
            return Err(GeometryError::DimensionMismatch {
                expected: self.ambient.dim(),
                found: other.ambient.dim(),
            });
        }
        let mut boxes = self.boxes.clone();
        boxes.extend_from_slice(&other.boxes);
        Ok(BoxFamily {
            ambient: self.ambient.clone(),
            boxes,
        })
    }

    pub fn without(&self, index: usize) -> BoxFamily {
        let mut boxes = self.boxes.clone();
        boxes.remove(index);
        BoxFamily {
            ambient: self.ambient.clone(),
            boxes,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoverMode {
    /// Every point is covered exactly `t` times.
    Exact,
    /// Every point is covered at least `t` times.
    AtLeast,
}

/// An axis-parallel line: all points agreeing with `point` off `axis`.
/// `point[axis]` is ignored and kept at zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub axis: usize,
    pub point: Vec<usize>,
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self
            .point
            .iter()
            .enumerate()
            .map(|(a, x)| if a == self.axis { "*".to_string() } else { x.to_string() })
            .collect();
        write!(f, "({})", coords.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub multiplicity: usize,
    pub mode: CoverMode,
    /// Whether the requested multiplicity/mode holds at every point.
    pub cover_ok: bool,
    pub is_partition: bool,
    pub cover_multiplicity_min: usize,
    pub cover_multiplicity_max: usize,
    /// First point (lexicographic) violating the requested cover, with its count.
    pub first_violation: Option<(Vec<usize>, usize)>,
    pub all_proper: bool,
    pub all_odd: bool,
    pub all_brick: bool,
    pub piercing_number: usize,
    pub per_axis_piercing: Vec<usize>,
    /// A line attaining the overall piercing minimum.
    pub weakest_line: Option<Line>,
}

/// For every axis and coordinate value, the set of boxes whose factor holds
/// that value, as a bitset over box indices.
struct MembershipIndex {
    words: usize,
    all: Vec<u64>,
    table: Vec<Vec<Vec<u64>>>,
}

impl MembershipIndex {
    fn new(ambient: &Ambient, boxes: &[DiscreteBox]) -> Self {
        let words = boxes.len().div_ceil(64).max(1);
        let table = (0..ambient.dim())
            .map(|axis| {
                (1..=ambient.side(axis))
                    .map(|x| {
                        let mut row = vec![0u64; words];
                        for (i, b) in boxes.iter().enumerate() {
                            if b.mask(axis) & (1 << (x - 1)) != 0 {
                                row[i / 64] |= 1 << (i % 64);
                            }
                        }
                        row
                    })
                    .collect()
            })
            .collect();
        let mut all = vec![0u64; words];
        for i in 0..boxes.len() {
            all[i / 64] |= 1 << (i % 64);
        }
        Self { words, all, table }
    }

    /// Boxes containing `point`, skipping axis `skip` when given.
    fn meet(&self, point: &[usize], skip: Option<usize>, out: &mut [u64]) {
        out.copy_from_slice(&self.all);
        for (axis, &x) in point.iter().enumerate() {
            if Some(axis) == skip {
                continue;
            }
            for (o, m) in out.iter_mut().zip(&self.table[axis][x - 1]) {
                *o &= m;
            }
        }
    }
}

fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Iterates every axis-parallel line along `axis`, calling `f` with the line
/// and the bitset of boxes it meets.
fn for_each_line(
    ambient: &Ambient,
    index: &MembershipIndex,
    axis: usize,
    mut f: impl FnMut(&Line, &[u64]),
) {
    let mut reduced = ambient.sides().to_vec();
    reduced[axis] = 1;
    let mut buf = vec![0u64; index.words];
    let odometer = Points {
        sides: &reduced,
        next: Some(vec![1; reduced.len()]),
    };
    for mut point in odometer {
        point[axis] = 0;
        index.meet(&point, Some(axis), &mut buf);
        let line = Line { axis, point };
        f(&line, &buf);
    }
}

/// Scans every point of the ambient and every axis-parallel line.
pub fn verify_cover(family: &BoxFamily, multiplicity: usize, mode: CoverMode) -> VerificationReport {
    let ambient = family.ambient();
    let boxes = family.boxes();
    let index = MembershipIndex::new(ambient, boxes);
    let mut buf = vec![0u64; index.words];

    let mut min = usize::MAX;
    let mut max = 0;
    let mut first_violation = None;
    for point in ambient.points() {
        let count = if boxes.is_empty() {
            0
        } else {
            index.meet(&point, None, &mut buf);
            popcount(&buf)
        };
        min = min.min(count);
        max = max.max(count);
        let ok = match mode {
            CoverMode::Exact => count == multiplicity,
            CoverMode::AtLeast => count >= multiplicity,
        };
        if !ok && first_violation.is_none() {
            first_violation = Some((point, count));
        }
    }

    let flags: Vec<BoxFlags> = boxes
        .iter()
        .map(|b| classify_box(b, ambient).expect("family boxes are validated"))
        .collect();
    let (per_axis_piercing, weakest_line) = piercing_with_witness(family);
    let piercing = per_axis_piercing.iter().copied().min().unwrap_or(0);

    VerificationReport {
        multiplicity,
        mode,
        cover_ok: first_violation.is_none(),
        is_partition: min == 1 && max == 1,
        cover_multiplicity_min: min,
        cover_multiplicity_max: max,
        first_violation,
        all_proper: flags.iter().all(|f| f.proper),
        all_odd: flags.iter().all(|f| f.odd),
        all_brick: flags.iter().all(|f| f.brick),
        piercing_number: piercing,
        per_axis_piercing,
        weakest_line,
    }
}

fn piercing_with_witness(family: &BoxFamily) -> (Vec<usize>, Option<Line>) {
    let ambient = family.ambient();
    if family.is_empty() {
        return (vec![0; ambient.dim()], None);
    }
    let index = MembershipIndex::new(ambient, family.boxes());
    let mut weakest: Option<(usize, Line)> = None;
    let per_axis = (0..ambient.dim())
        .map(|axis| {
            let mut axis_min = usize::MAX;
            for_each_line(ambient, &index, axis, |line, met| {
                let count = popcount(met);
                axis_min = axis_min.min(count);
                if weakest.as_ref().is_none_or(|(c, _)| count < *c) {
                    weakest = Some((count, line.clone()));
                }
            });
            axis_min
        })
        .collect();
    (per_axis, weakest.map(|(_, l)| l))
}

/// Minimum number of distinct boxes met by an axis-parallel line, overall and
/// per axis.
pub fn piercing_number(family: &BoxFamily) -> (usize, Vec<usize>) {
    let (per_axis, _) = piercing_with_witness(family);
    (per_axis.iter().copied().min().unwrap_or(0), per_axis)
}

/// Whether every line along axis `j` meets parts whose `j`-th labels sum to
/// at least `k`.
pub fn weighted_piercing_ok(ip: &IntermediatePartition, k: usize) -> Result<bool, GeometryError> {
    Ok(weighted_piercing_violation(ip, k)?.is_none())
}

/// First line whose label sum falls short of `k`, with that sum.
pub fn weighted_piercing_violation(
    ip: &IntermediatePartition,
    k: usize,
) -> Result<Option<(Line, usize)>, GeometryError> {
    let ambient = ip.ambient();
    let d = ambient.dim();
    for (i, (b, label)) in ip.parts().iter().enumerate() {
        if b.dim() != d {
            return Err(GeometryError::DimensionMismatch {
                expected: d,
                found: b.dim(),
            });
        }
        if label.len() != d || label.contains(&0) {
            return Err(GeometryError::BadLabel {
                part: i + 1,
                expected: d,
            });
        }
    }
    let boxes: Vec<DiscreteBox> = ip.parts().iter().map(|(b, _)| b.clone()).collect();
    let index = MembershipIndex::new(ambient, &boxes);
    for axis in 0..d {
        let mut violation = None;
        for_each_line(ambient, &index, axis, |line, met| {
            if violation.is_some() {
                return;
            }
            let sum: usize = met
                .iter()
                .enumerate()
                .flat_map(|(w, &bits)| mask_elements(bits).map(move |b| w * 64 + b - 1))
                .map(|i| ip.parts()[i].1[axis])
                .sum();
            if sum < k {
                violation = Some((line.clone(), sum));
            }
        });
        if violation.is_some() {
            return Ok(violation);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bx(sets: &[&[usize]]) -> DiscreteBox {
        DiscreteBox::from_sets(sets).unwrap()
    }

    #[test]
    fn classify_examples() {
        let a7 = Ambient::cube(7, 3).unwrap();
        let f = classify_box(&bx(&[&[2, 3, 4], &[4], &[1, 6, 7]]), &a7).unwrap();
        assert_eq!(
            f,
            BoxFlags {
                proper: true,
                odd: true,
                brick: false
            }
        );
        let a5 = Ambient::cube(5, 2).unwrap();
        let f = classify_box(&bx(&[&[2, 3, 4], &[3, 4]]), &a5).unwrap();
        assert_eq!(
            f,
            BoxFlags {
                proper: true,
                odd: false,
                brick: true
            }
        );
        let f = classify_box(&DiscreteBox::full(&a5), &a5).unwrap();
        assert_eq!(
            f,
            BoxFlags {
                proper: false,
                odd: true,
                brick: true
            }
        );
    }

    #[test]
    fn classify_rejects_dimension_mismatch() {
        let a = Ambient::cube(5, 2).unwrap();
        let err = classify_box(&bx(&[&[1], &[1], &[1]]), &a).unwrap_err();
        assert!(matches!(err, GeometryError::DimensionMismatch { .. }));
    }

    #[test]
    fn disjointness() {
        assert!(boxes_disjoint(&bx(&[&[1], &[1]]), &bx(&[&[2], &[1]])).unwrap());
        assert!(!boxes_disjoint(&bx(&[&[1, 3], &[1, 2]]), &bx(&[&[3], &[2]])).unwrap());
        assert!(boxes_disjoint(&bx(&[&[1]]), &bx(&[&[1], &[1]])).is_err());
    }

    #[test]
    fn bad_boxes_are_rejected() {
        assert!(matches!(
            DiscreteBox::from_sets(&[vec![1, 1]]),
            Err(GeometryError::DuplicateElement { .. })
        ));
        assert!(matches!(
            DiscreteBox::from_sets(&[vec![0]]),
            Err(GeometryError::OutOfRange { .. })
        ));
        assert!(matches!(
            DiscreteBox::from_sets(&[Vec::<usize>::new()]),
            Err(GeometryError::EmptyFactor { .. })
        ));
        assert!(Ambient::new(vec![1]).is_err());
        assert!(Ambient::new(vec![]).is_err());
        let a = Ambient::cube(3, 1).unwrap();
        assert!(bx(&[&[4]]).check_within(&a).is_err());
    }

    #[test]
    fn empty_family_report() {
        let fam = BoxFamily::empty(Ambient::cube(3, 2).unwrap());
        let r = verify_cover(&fam, 1, CoverMode::Exact);
        assert!(!r.is_partition);
        assert_eq!(r.cover_multiplicity_max, 0);
        assert_eq!(r.first_violation, Some((vec![1, 1], 0)));
        assert_eq!(r.piercing_number, 0);
    }

    #[test]
    fn interval_detection() {
        assert!(bx(&[&[3, 4, 5]]).is_interval(0));
        assert!(bx(&[&[64]]).is_interval(0));
        assert!(!bx(&[&[1, 3]]).is_interval(0));
        let all: Vec<usize> = (1..=64).collect();
        assert!(DiscreteBox::from_sets(&[all]).unwrap().is_interval(0));
    }

    #[test]
    fn reflect_and_stretch() {
        let b = bx(&[&[1, 2], &[3]]);
        assert_eq!(b.reflect(0, 5), bx(&[&[4, 5], &[3]]));
        assert_eq!(b.stretch(0, 2, 2), bx(&[&[1, 2, 3, 4], &[3]]));
        assert_eq!(b.stretch(1, 2, 1), bx(&[&[1, 2], &[4]]));
        assert_eq!(b.stretch(1, 3, 1), bx(&[&[1, 2], &[3, 4]]));
    }

    #[test]
    fn points_are_lexicographic() {
        let a = Ambient::new(vec![2, 3]).unwrap();
        let pts: Vec<Vec<usize>> = a.points().collect();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], vec![1, 1]);
        assert_eq!(pts[1], vec![1, 2]);
        assert_eq!(pts[5], vec![2, 3]);
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(a.point_index(p), i);
        }
    }

    #[test]
    fn line_display() {
        let l = Line {
            axis: 1,
            point: vec![3, 0, 5],
        };
        assert_eq!(l.to_string(), "(3,*,5)");
    }
}

//! Brick partitions meeting per-axis piercing targets `(a_1, ..., a_d)`:
//! every line along axis `i` meets at least `a_i` bricks.
//!
//! Sizes follow the recursion
//! `f(a) = min(slab, quadrant)` over the axes with target above one, where a
//! slab stacks `a_p` copies of `f(a with a_p = 1)` and a quadrant split on
//! axes `(p, q)` places `f(1, a_q - 1, ...)` in two opposite quadrants and
//! `f(a_p - 1, 1, ...)` in the other two.

use std::collections::HashMap;

use crate::geometry::{Ambient, BoxFamily, DiscreteBox, MAX_SIDE};

use super::ConstructionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Strategy {
    Unit,
    Single,
    Slab(usize),
    Quadrant(usize, usize),
}

/// Interval bricks over a box of (possibly unit) sides.
#[derive(Debug, Clone)]
pub(crate) struct Block {
    pub sides: Vec<usize>,
    pub boxes: Vec<Vec<(usize, usize)>>,
}

impl Block {
    /// Extends every axis to `sides` by stretching the last coordinate.
    pub fn stretched(&self, sides: &[usize]) -> Block {
        let boxes = self
            .boxes
            .iter()
            .map(|b| {
                b.iter()
                    .enumerate()
                    .map(|(axis, &(lo, hi))| {
                        if hi == self.sides[axis] {
                            (lo, sides[axis])
                        } else {
                            (lo, hi)
                        }
                    })
                    .collect()
            })
            .collect();
        Block {
            sides: sides.to_vec(),
            boxes,
        }
    }

    fn shifted(&self, axis: usize, offset: usize) -> impl Iterator<Item = Vec<(usize, usize)>> + '_ {
        self.boxes.iter().map(move |b| {
            let mut b = b.clone();
            b[axis].0 += offset;
            b[axis].1 += offset;
            b
        })
    }
}

fn key_of(targets: &[usize]) -> Vec<usize> {
    let mut key: Vec<usize> = targets.iter().copied().filter(|&a| a > 1).collect();
    key.sort_unstable_by(|a, b| b.cmp(a));
    key
}

fn replace_two(key: &[usize], i: usize, vi: usize, j: usize, vj: usize) -> Vec<usize> {
    let mut next = key.to_vec();
    next[i] = vi;
    next[j] = vj;
    key_of(&next)
}

#[derive(Default)]
pub(crate) struct Planner {
    memo: HashMap<Vec<usize>, (u128, Strategy)>,
}

impl Planner {
    fn plan(&mut self, key: &[usize]) -> (u128, Strategy) {
        if let Some(&hit) = self.memo.get(key) {
            return hit;
        }
        let result = match key.len() {
            0 => (1, Strategy::Unit),
            1 => (key[0] as u128, Strategy::Single),
            len => {
                let mut best: Option<(u128, Strategy)> = None;
                let mut seen = Vec::new();
                for i in 0..len {
                    for j in (i + 1)..len {
                        let (a, b) = (key[i], key[j]);
                        if seen.contains(&(a, b)) {
                            continue;
                        }
                        seen.push((a, b));
                        let first = self.plan(&replace_two(key, i, 1, j, b - 1)).0;
                        let second = self.plan(&replace_two(key, i, a - 1, j, 1)).0;
                        let size = 2 * first + 2 * second;
                        if best.is_none_or(|(s, _)| size < s) {
                            best = Some((size, Strategy::Quadrant(a, b)));
                        }
                    }
                }
                for (i, &a) in key.iter().enumerate() {
                    if i > 0 && key[i - 1] == a {
                        continue;
                    }
                    let mut rest = key.to_vec();
                    rest.remove(i);
                    let size = a as u128 * self.plan(&rest).0;
                    if best.is_none_or(|(s, _)| size < s) {
                        best = Some((size, Strategy::Slab(a)));
                    }
                }
                best.expect("at least one strategy applies")
            }
        };
        self.memo.insert(key.to_vec(), result);
        result
    }

    pub fn size(&mut self, targets: &[usize]) -> u128 {
        self.plan(&key_of(targets)).0
    }

    pub fn build(&mut self, targets: &[usize]) -> Block {
        let d = targets.len();
        let (_, strategy) = self.plan(&key_of(targets));
        match strategy {
            Strategy::Unit => Block {
                sides: vec![1; d],
                boxes: vec![vec![(1, 1); d]],
            },
            Strategy::Single => {
                let p = targets.iter().position(|&a| a > 1).expect("one active axis");
                let mut sides = vec![1; d];
                sides[p] = targets[p];
                let boxes = (1..=targets[p])
                    .map(|i| {
                        let mut b = vec![(1, 1); d];
                        b[p] = (i, i);
                        b
                    })
                    .collect();
                Block { sides, boxes }
            }
            Strategy::Slab(a) => {
                let p = targets.iter().position(|&t| t == a).expect("slab axis");
                let mut sub_targets = targets.to_vec();
                sub_targets[p] = 1;
                let sub = self.build(&sub_targets);
                let mut sides = sub.sides.clone();
                sides[p] = a;
                let boxes = (0..a).flat_map(|i| sub.shifted(p, i).collect::<Vec<_>>()).collect();
                Block { sides, boxes }
            }
            Strategy::Quadrant(a, b) => {
                let p = targets.iter().position(|&t| t == a).expect("quadrant axis");
                let q = targets
                    .iter()
                    .enumerate()
                    .position(|(i, &t)| i != p && t == b)
                    .expect("second quadrant axis");
                let mut t1 = targets.to_vec();
                t1[p] = 1;
                t1[q] = b - 1;
                let mut t2 = targets.to_vec();
                t2[p] = a - 1;
                t2[q] = 1;
                let (s1, s2) = (self.build(&t1), self.build(&t2));
                let widths: Vec<usize> = (0..d).map(|r| s1.sides[r].max(s2.sides[r])).collect();
                let (s1, s2) = (s1.stretched(&widths), s2.stretched(&widths));
                let (wp, wq) = (widths[p], widths[q]);
                let mut boxes: Vec<Vec<(usize, usize)>> = Vec::new();
                // low/low and high/high hold the (1, b-1) piece, the mixed quadrants the (a-1, 1) piece.
                boxes.extend(s1.boxes.iter().cloned());
                boxes.extend(s2.shifted(q, wq));
                boxes.extend(s2.shifted(p, wp));
                boxes.extend(s1.shifted(p, wp).map(|mut bx| {
                    bx[q].0 += wq;
                    bx[q].1 += wq;
                    bx
                }));
                let mut sides = widths;
                sides[p] = 2 * wp;
                sides[q] = 2 * wq;
                Block { sides, boxes }
            }
        }
    }
}

pub(crate) fn block_to_cube(block: &Block) -> Result<BoxFamily, ConstructionError> {
    let n = block.sides.iter().copied().max().unwrap_or(1).max(2);
    if n > MAX_SIDE {
        return Err(ConstructionError::Sizing { required: n });
    }
    let d = block.sides.len();
    let cube = block.stretched(&vec![n; d]);
    let boxes = cube
        .boxes
        .iter()
        .map(|b| DiscreteBox::brick(b))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BoxFamily::new(Ambient::cube(n, d)?, boxes)?)
}

fn check_targets(targets: &[usize]) -> Result<(), ConstructionError> {
    if targets.is_empty() {
        return Err(ConstructionError::ZeroDimension);
    }
    if let Some(&bad) = targets.iter().find(|&&a| a == 0) {
        return Err(ConstructionError::TargetTooSmall { min: 1, got: bad });
    }
    Ok(())
}

/// Size of the partition [`piercing_construction`] builds for `targets`.
pub fn piercing_size(targets: &[usize]) -> Result<u128, ConstructionError> {
    check_targets(targets)?;
    Ok(Planner::default().size(targets))
}

/// Brick partition of a cube meeting the per-axis piercing `targets`.
pub fn piercing_construction(targets: &[usize]) -> Result<BoxFamily, ConstructionError> {
    check_targets(targets)?;
    block_to_cube(&Planner::default().build(targets))
}

/// `k`-piercing brick partition of a `d`-cube via the quadrant recursion:
/// `k` bricks for `d = 1`, `4(k-1)` for `d = 2`.
pub fn quadrant_construction(d: usize, k: usize) -> Result<BoxFamily, ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::TargetTooSmall { min: 2, got: k });
    }
    if d == 0 {
        return Err(ConstructionError::ZeroDimension);
    }
    piercing_construction(&vec![k; d])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{piercing_number, verify_cover, CoverMode};

    #[test]
    fn one_dimension_is_k_segments() {
        let p = quadrant_construction(1, 5).unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(piercing_number(&p).0, 5);
    }

    #[test]
    fn two_dimensions_match_four_k_minus_one() {
        for k in 2..=8 {
            let p = quadrant_construction(2, k).unwrap();
            assert_eq!(p.len(), 4 * (k - 1), "k = {k}");
            assert!(verify_cover(&p, 1, CoverMode::Exact).is_partition);
            assert_eq!(piercing_number(&p).0, k);
        }
    }

    #[test]
    fn three_dimensions_k4() {
        let p = quadrant_construction(3, 4).unwrap();
        assert!(p.len() <= 48);
        let r = verify_cover(&p, 1, CoverMode::Exact);
        assert!(r.is_partition && r.all_brick);
        assert!(r.piercing_number >= 4);
    }

    #[test]
    fn mixed_targets_are_met_per_axis() {
        for targets in [vec![1, 3], vec![2, 2, 1], vec![3, 1, 2], vec![4, 2], vec![2, 3, 3]] {
            let p = piercing_construction(&targets).unwrap();
            assert_eq!(p.len() as u128, piercing_size(&targets).unwrap());
            let (_, per_axis) = piercing_number(&p);
            for (got, want) in per_axis.iter().zip(&targets) {
                assert!(got >= want, "{targets:?}: {per_axis:?}");
            }
        }
    }

    #[test]
    fn sizes_of_small_vectors() {
        assert_eq!(piercing_size(&[1, 1, 2, 2]).unwrap(), 4);
        assert_eq!(piercing_size(&[1, 1, 1, 2]).unwrap(), 2);
        assert_eq!(piercing_size(&[1, 1, 1, 1]).unwrap(), 1);
        assert_eq!(piercing_size(&[3, 3]).unwrap(), 8);
    }

    #[test]
    fn rejects_bad_targets() {
        assert!(quadrant_construction(2, 1).is_err());
        assert!(piercing_construction(&[]).is_err());
        assert!(piercing_construction(&[0, 2]).is_err());
    }
}

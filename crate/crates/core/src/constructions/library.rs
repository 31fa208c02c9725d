//! Fixed intermediate partitions on small integer grids.
//!
//! Each part is written as `axis | axis | ... : labels`, where an axis is a
//! comma list of coordinates or `lo-hi` ranges and each label character is
//! `1`, `a` (`k - 1`) or `b` (`k - 2`).

use std::fmt;
use std::str::FromStr;

use crate::geometry::{Ambient, DiscreteBox};

use super::intermediate::{stack_lemma, CornerSpec, IntermediatePartition, PiercingVector};
use super::ConstructionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Figure {
    /// Five parts in two dimensions, the input of the first stacking example.
    Fig3,
    /// The stacked ten-part partition in three dimensions.
    Fig4,
    /// Twelve parts in three dimensions, the input of the second stacking example.
    Fig5,
    /// Twenty-two parts in four dimensions.
    Fig6,
    /// Fifteen parts in three dimensions, some of them boxes with gaps.
    Fig8,
}

impl Figure {
    pub const ALL: [Figure; 5] = [Figure::Fig3, Figure::Fig4, Figure::Fig5, Figure::Fig6, Figure::Fig8];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
            Figure::Fig6 => "fig6",
            Figure::Fig8 => "fig8",
        }
    }

    /// Corners `(X, Y)` used when this figure is fed to the stacking step.
    pub fn stack_corners(self) -> Option<(CornerSpec, CornerSpec)> {
        let pair = |x: &str, y: &str| Some((CornerSpec::parse(x)?, CornerSpec::parse(y)?));
        match self {
            Figure::Fig3 => pair("LL", "HL"),
            Figure::Fig5 => pair("HHL", "HHH"),
            _ => None,
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownFigure(pub String);

impl fmt::Display for UnknownFigure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown figure '{}' (expected fig3, fig4, fig5, fig6 or fig8)", self.0)
    }
}

impl std::error::Error for UnknownFigure {}

impl FromStr for Figure {
    type Err = UnknownFigure;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownFigure(s.to_string()))
    }
}

const FIG3: (&[usize], &[&str]) = (
    &[3, 2],
    &[
        "1 | 1 : 1a",
        "1 | 2 : a1",
        "2 | 1 : b1",
        "2-3 | 2 : 1a",
        "3 | 1 : 11",
    ],
);

const FIG5: (&[usize], &[&str]) = (
    &[6, 2, 2],
    &[
        "1-2 | 1 | 1 : 1a1",
        "3 | 1 | 1 : b11",
        "4-6 | 1 | 1 : 11a",
        "1 | 2 | 1 : 11a",
        "2 | 2 | 1 : b1a",
        "3-6 | 2 | 1 : 1aa",
        "1-3 | 1 | 2 : 11a",
        "4 | 1 | 2 : b11",
        "5-6 | 1 | 2 : 1a1",
        "1-4 | 2 | 2 : 1a1",
        "5 | 2 | 2 : b11",
        "6 | 2 | 2 : 111",
    ],
);

const FIG6: (&[usize], &[&str]) = (
    &[8, 2, 2, 2],
    &[
        "3 | 1 | 1 | 1 : b111",
        "1-2 | 1 | 1 | 1 : 11a1",
        "4-8 | 1 | 1 | 1 : 1a11",
        "1-3 | 2 | 1 | 1 : 1a11",
        "4 | 2 | 1 | 1 : b111",
        "5-8 | 2 | 1 | 1 : 111a",
        "1 | 2 | 2 | 1 : a1a1",
        "1 | 1 | 2 | 1 : 1a11",
        "2 | 1 | 2 | 1 : b111",
        "2-8 | 2 | 2 | 1 : 1aa1",
        "3-8 | 1 | 2 | 1 : 11a1",
        "1-5 | 1 | 1 | 2 : 1a1a",
        "1-4 | 2 | 1 | 2 : 11aa",
        "5 | 2 | 1 | 2 : b1a1",
        "6-8 | 2 | 1 | 2 : 1aa1",
        "6 | 1 | 1 | 2 : b11a",
        "7-8 | 1 | 1 | 2 : 11aa",
        "1-7 | 2 | 2 | 2 : 1a1a",
        "8 | 2 | 2 | 2 : a11a",
        "1-6 | 1 | 2 | 2 : 11aa",
        "7 | 1 | 2 | 2 : b11a",
        "8 | 1 | 2 | 2 : 1a1a",
    ],
);

const FIG8: (&[usize], &[&str]) = (
    &[5, 4, 3],
    &[
        "1 | 4 | 1 : a11",
        "2-5 | 4 | 1 : 1a1",
        "1 | 1-3 | 1 : 1a1",
        "2 | 1-3 | 1 : b11",
        "3-5 | 1-3 | 1 : 11b",
        "1-3 | 2-4 | 2 : 11b",
        "1-4 | 1 | 2 : 1a1",
        "5 | 1 | 2 : a11",
        "5 | 2-4 | 2 : 1a1",
        "4 | 2-4 | 2 : b11",
        "1,2,4,5 | 1,4 | 3 : 11b",
        "1,2,4,5 | 2 | 3 : a11",
        "1,2,4,5 | 3 | 3 : 1b1",
        "3 | 2 | 3 : 1a1",
        "3 | 1,3,4 | 3 : a11",
    ],
);

fn parse_axis(spec: &str) -> Vec<usize> {
    spec.split(',')
        .flat_map(|item| {
            let item = item.trim();
            match item.split_once('-') {
                Some((lo, hi)) => {
                    let (lo, hi): (usize, usize) = (lo.parse().unwrap(), hi.parse().unwrap());
                    (lo..=hi).collect::<Vec<_>>()
                }
                None => vec![item.parse().unwrap()],
            }
        })
        .collect()
}

fn build(table: (&[usize], &[&str]), k: usize) -> Result<IntermediatePartition, ConstructionError> {
    let (sides, rows) = table;
    let mut parts = Vec::with_capacity(rows.len());
    for row in rows {
        let (geometry, labels) = row.split_once(':').expect("fixture row has labels");
        let sets: Vec<Vec<usize>> = geometry.split('|').map(parse_axis).collect();
        let labels = labels
            .trim()
            .chars()
            .map(|c| match c {
                '1' => 1,
                'a' => k - 1,
                'b' => k - 2,
                other => unreachable!("bad label letter {other}"),
            })
            .collect();
        parts.push((DiscreteBox::from_sets(&sets)?, PiercingVector::new(labels)?));
    }
    IntermediatePartition::new(Ambient::new(sides.to_vec())?, parts)
}

/// The named intermediate partition with labels evaluated at `k` (at least 3).
pub fn intermediate_library(fig: Figure, k: usize) -> Result<IntermediatePartition, ConstructionError> {
    if k < 3 {
        return Err(ConstructionError::TargetTooSmall { min: 3, got: k });
    }
    match fig {
        Figure::Fig3 => build(FIG3, k),
        Figure::Fig4 => {
            let (x, y) = Figure::Fig3.stack_corners().expect("fig3 has corners");
            stack_lemma(&build(FIG3, k)?, &x, &y, k)
        }
        Figure::Fig5 => build(FIG5, k),
        Figure::Fig6 => build(FIG6, k),
        Figure::Fig8 => build(FIG8, k),
    }
}

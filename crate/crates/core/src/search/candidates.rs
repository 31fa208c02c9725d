use std::fmt;
use std::str::FromStr;

use crate::geometry::{mask_elements, Ambient, DiscreteBox};

use super::SearchError;

pub const DEFAULT_SIDE_CAP: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CandidateKind {
    OddProperBox,
    ProperBox,
    OddProperBrick,
    ProperBrick,
}

impl CandidateKind {
    pub const ALL: [CandidateKind; 4] = [
        CandidateKind::OddProperBox,
        CandidateKind::ProperBox,
        CandidateKind::OddProperBrick,
        CandidateKind::ProperBrick,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CandidateKind::OddProperBox => "odd-proper-box",
            CandidateKind::ProperBox => "proper-box",
            CandidateKind::OddProperBrick => "odd-proper-brick",
            CandidateKind::ProperBrick => "proper-brick",
        }
    }

    pub fn odd(self) -> bool {
        matches!(self, CandidateKind::OddProperBox | CandidateKind::OddProperBrick)
    }

    pub fn brick(self) -> bool {
        matches!(self, CandidateKind::OddProperBrick | CandidateKind::ProperBrick)
    }

    fn admits(self, mask: u64, side: usize) -> bool {
        let full = if side == 64 { u64::MAX } else { (1u64 << side) - 1 };
        let len = mask.count_ones();
        let shifted = mask >> mask.trailing_zeros();
        mask != full
            && (!self.odd() || len % 2 == 1)
            && (!self.brick() || shifted & shifted.wrapping_add(1) == 0)
    }
}

impl fmt::Display for CandidateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CandidateKind {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.replace('_', "-").to_ascii_lowercase();
        CandidateKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| SearchError::UnknownKind(s.to_string()))
    }
}

/// Factor sets of `[side]` admitted by `kind`, ordered lexicographically by
/// their sorted element lists.
fn factor_options(kind: CandidateKind, side: usize) -> Vec<u64> {
    let mut opts: Vec<(Vec<usize>, u64)> = (1..(1u64 << side))
        .filter(|&m| kind.admits(m, side))
        .map(|m| (mask_elements(m).collect(), m))
        .collect();
    opts.sort();
    opts.into_iter().map(|(_, m)| m).collect()
}

/// Every box of `kind` in `ambient`, first axis most significant, with sides
/// limited to [`DEFAULT_SIDE_CAP`].
pub fn enumerate_candidates(ambient: &Ambient, kind: CandidateKind) -> Result<Vec<DiscreteBox>, SearchError> {
    enumerate_candidates_capped(ambient, kind, DEFAULT_SIDE_CAP)
}

pub fn enumerate_candidates_capped(
    ambient: &Ambient,
    kind: CandidateKind,
    cap: usize,
) -> Result<Vec<DiscreteBox>, SearchError> {
    if let Some(&side) = ambient.sides().iter().find(|&&s| s > cap.min(20)) {
        return Err(SearchError::CapExceeded { side, cap });
    }
    let options: Vec<Vec<u64>> = ambient.sides().iter().map(|&s| factor_options(kind, s)).collect();
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for axis in &options {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&m| {
                    let mut p = prefix.clone();
                    p.push(m);
                    p
                })
            })
            .collect();
    }
    Ok(out
        .into_iter()
        .map(|masks| DiscreteBox::from_masks(masks).expect("options are nonempty"))
        .collect())
}

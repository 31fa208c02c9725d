//! Minimum covers of a box by candidate sub-boxes: every point covered
//! exactly (or at least) `t` times, each candidate used at most once.

mod anneal;
mod bnb;
mod candidates;
mod export;

use std::time::Duration;

use thiserror::Error;

use crate::geometry::{Ambient, BoxFamily, CoverMode, DiscreteBox, GeometryError};

pub use anneal::anneal_cover;
pub use bnb::solve_cover;
pub use candidates::{enumerate_candidates, enumerate_candidates_capped, CandidateKind, DEFAULT_SIDE_CAP};
pub use export::{export_model, parse_lp_model, ModelFormat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("side {side} exceeds the enumeration cap {cap}")]
    CapExceeded { side: usize, cap: usize },
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("the {format} format supports only exact covers with t = 1")]
    UnsupportedModel { format: &'static str },
    #[error("line {line}: {message}")]
    ModelParse { line: usize, message: String },
    #[error("unknown candidate kind '{0}'")]
    UnknownKind(String),
}

/// Ambient, candidate boxes and the required multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverInstance {
    pub ambient: Ambient,
    pub candidates: Vec<DiscreteBox>,
    pub multiplicity: usize,
    pub mode: CoverMode,
    /// A size no cover can beat; reaching it ends the search as optimal.
    pub known_lower_bound: Option<usize>,
}

impl CoverInstance {
    pub fn new(
        ambient: Ambient,
        candidates: Vec<DiscreteBox>,
        multiplicity: usize,
        mode: CoverMode,
    ) -> Result<Self, SearchError> {
        if multiplicity == 0 {
            return Err(SearchError::ZeroMultiplicity);
        }
        for c in &candidates {
            c.check_within(&ambient)?;
        }
        Ok(Self {
            ambient,
            candidates,
            multiplicity,
            mode,
            known_lower_bound: None,
        })
    }

    /// Instance over all candidates of `kind` in `ambient`.
    pub fn from_kind(
        ambient: Ambient,
        kind: CandidateKind,
        multiplicity: usize,
        mode: CoverMode,
    ) -> Result<Self, SearchError> {
        let candidates = enumerate_candidates(&ambient, kind)?;
        Self::new(ambient, candidates, multiplicity, mode)
    }

    pub fn with_lower_bound(mut self, bound: usize) -> Self {
        self.known_lower_bound = Some(bound);
        self
    }

    /// `ceil(t * volume / largest candidate)`, valid for every instance.
    pub fn volume_bound(&self) -> usize {
        let largest = self
            .candidates
            .iter()
            .map(|c| c.cardinality() as usize)
            .max()
            .unwrap_or(1);
        (self.multiplicity * self.ambient.volume()).div_ceil(largest)
    }

    pub(crate) fn family(&self, chosen: &[usize]) -> BoxFamily {
        let boxes = chosen.iter().map(|&i| self.candidates[i].clone()).collect();
        BoxFamily::new(self.ambient.clone(), boxes).expect("candidates fit the ambient")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    /// Search nodes (branch-and-bound) or moves (annealing).
    pub max_nodes: u64,
    pub wall_seconds: u64,
    pub seed: u64,
    pub threads: usize,
    /// Stop as soon as a cover of at most this size is found.
    pub stop_at: Option<usize>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_nodes: u64::MAX,
            wall_seconds: 600,
            seed: 0,
            threads: 1,
            stop_at: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub best: Option<BoxFamily>,
    /// Size of `best`; `None` when nothing was found.
    pub best_size: Option<usize>,
    pub proven_optimal: bool,
    /// Whether the node or time budget ran out before the search finished.
    pub budget_exhausted: bool,
    pub nodes: u64,
    pub elapsed: Duration,
}

/// Point indexing shared by the solvers.
pub(crate) struct Compiled {
    pub points: usize,
    /// Points of each candidate.
    pub cover: Vec<Vec<u32>>,
    /// Candidates through each point, in candidate order.
    pub through: Vec<Vec<u32>>,
}

impl Compiled {
    pub fn new(instance: &CoverInstance) -> Self {
        let ambient = &instance.ambient;
        let points = ambient.volume();
        let mut through = vec![Vec::new(); points];
        let cover: Vec<Vec<u32>> = instance
            .candidates
            .iter()
            .enumerate()
            .map(|(ci, c)| {
                let mut pts = vec![0usize];
                for axis in 0..ambient.dim() {
                    let side = ambient.side(axis);
                    pts = pts
                        .iter()
                        .flat_map(|&base| c.factor(axis).into_iter().map(move |x| base * side + x - 1))
                        .collect();
                }
                pts.sort_unstable();
                for &p in &pts {
                    through[p].push(ci as u32);
                }
                pts.into_iter().map(|p| p as u32).collect()
            })
            .collect();
        Self { points, cover, through }
    }
}

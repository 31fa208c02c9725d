//! Edge-coloured graphs from 2D partitions: one vertex per box, an edge of
//! colour 0 ("red") when some vertical line meets both boxes and colour 1
//! ("blue") when some horizontal line does. A `k`-piercing partition puts
//! every vertex in a monochromatic `K_k` of each colour.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::bounds::{BoundNumber, BoundValue, Validity};
use crate::geometry::BoxFamily;

pub const RED: usize = 0;
pub const BLUE: usize = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("the reduction needs a 2-dimensional family, got dimension {0}")]
    NotPlanar(usize),
    #[error("parameter {name} must be at least {min}, got {got}")]
    TooSmall { name: &'static str, min: usize, got: usize },
    #[error("clique search exceeded its budget of {0} nodes")]
    Budget(u64),
}

/// A graph whose edges carry one or more of `colors` colours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoColoredGraph {
    vertex_count: usize,
    adjacency: Vec<Vec<FixedBitSet>>,
    /// Pairs that would need both colours; they are left uncoloured.
    pub conflicts: Vec<(usize, usize)>,
}

impl TwoColoredGraph {
    pub fn new(vertex_count: usize, colors: usize) -> Self {
        Self {
            vertex_count,
            adjacency: vec![vec![FixedBitSet::with_capacity(vertex_count); vertex_count]; colors],
            conflicts: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn colors(&self) -> usize {
        self.adjacency.len()
    }

    /// Adds `{u, v}` in `color`; self-loops are ignored.
    pub fn add_edge(&mut self, color: usize, u: usize, v: usize) {
        if u != v {
            self.adjacency[color][u].insert(v);
            self.adjacency[color][v].insert(u);
        }
    }

    pub fn has_edge(&self, color: usize, u: usize, v: usize) -> bool {
        self.adjacency[color][u].contains(v)
    }

    pub fn neighbors(&self, color: usize, v: usize) -> &FixedBitSet {
        &self.adjacency[color][v]
    }

    pub fn edge_count(&self, color: usize) -> usize {
        self.adjacency[color].iter().map(|row| row.count_ones(..)).sum::<usize>() / 2
    }

    /// Pairs joined in more than one colour.
    pub fn multi_colored_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.vertex_count {
            for v in (u + 1)..self.vertex_count {
                if (0..self.colors()).filter(|&c| self.has_edge(c, u, v)).count() > 1 {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// The red/blue graph of a 2D family. Pairs sharing both a vertical and a
/// horizontal line (only possible when boxes overlap) go to `conflicts`.
pub fn partition_to_graph(p: &BoxFamily) -> Result<TwoColoredGraph, GraphError> {
    let d = p.ambient().dim();
    if d != 2 {
        return Err(GraphError::NotPlanar(d));
    }
    let boxes = p.boxes();
    let mut g = TwoColoredGraph::new(boxes.len(), 2);
    for (i, a) in boxes.iter().enumerate() {
        for (j, b) in boxes.iter().enumerate().skip(i + 1) {
            let vertical = a.mask(0) & b.mask(0) != 0;
            let horizontal = a.mask(1) & b.mask(1) != 0;
            match (vertical, horizontal) {
                (true, true) => g.conflicts.push((i, j)),
                (true, false) => g.add_edge(RED, i, j),
                (false, true) => g.add_edge(BLUE, i, j),
                (false, false) => {}
            }
        }
    }
    Ok(g)
}

/// Outcome of the clique check: witnesses per vertex and colour, or the
/// first vertex and colour with no `K_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueReport {
    pub holds: bool,
    /// `witnesses[v][c]` is a `k`-clique of colour `c` through `v`.
    pub witnesses: Vec<Vec<Vec<usize>>>,
    pub failure: Option<(usize, usize)>,
    pub nodes: u64,
}

pub const DEFAULT_CLIQUE_BUDGET: u64 = 10_000_000;

struct CliqueSearch<'a> {
    adjacency: &'a [FixedBitSet],
    order: &'a [usize],
    nodes: u64,
    budget: u64,
}

impl CliqueSearch<'_> {
    /// Extends `clique` by `need` vertices drawn from `cand`.
    fn extend(&mut self, cand: &FixedBitSet, need: usize, clique: &mut Vec<usize>) -> Result<bool, GraphError> {
        if need == 0 {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(GraphError::Budget(self.budget));
        }
        if cand.count_ones(..) < need {
            return Ok(false);
        }
        let mut rest = cand.clone();
        for &v in self.order {
            if !rest.contains(v) {
                continue;
            }
            if rest.count_ones(..) < need {
                break;
            }
            rest.set(v, false);
            let mut next = rest.clone();
            next.intersect_with(&self.adjacency[v]);
            clique.push(v);
            if self.extend(&next, need - 1, clique)? {
                return Ok(true);
            }
            clique.pop();
        }
        Ok(false)
    }
}

/// Vertices by decreasing core number, so dense parts are tried first.
fn degeneracy_order(adjacency: &[FixedBitSet]) -> Vec<usize> {
    let n = adjacency.len();
    let mut degree: Vec<usize> = adjacency.iter().map(|row| row.count_ones(..)).collect();
    let mut removed = vec![false; n];
    let mut peel = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("vertices remain");
        removed[v] = true;
        peel.push(v);
        for u in adjacency[v].ones() {
            if !removed[u] {
                degree[u] -= 1;
            }
        }
    }
    peel.reverse();
    peel
}

/// Whether every vertex lies in a `K_k` of every colour.
pub fn clique_property_check(g: &TwoColoredGraph, k: usize) -> Result<CliqueReport, GraphError> {
    clique_property_check_budgeted(g, k, DEFAULT_CLIQUE_BUDGET)
}

pub fn clique_property_check_budgeted(
    g: &TwoColoredGraph,
    k: usize,
    budget: u64,
) -> Result<CliqueReport, GraphError> {
    if k == 0 {
        return Err(GraphError::TooSmall { name: "k", min: 1, got: 0 });
    }
    let n = g.vertex_count();
    let orders: Vec<Vec<usize>> = g.adjacency.iter().map(|a| degeneracy_order(a)).collect();
    let mut witnesses = vec![vec![Vec::new(); g.colors()]; n];
    let mut nodes = 0;
    for v in 0..n {
        for c in 0..g.colors() {
            let mut search = CliqueSearch {
                adjacency: &g.adjacency[c],
                order: &orders[c],
                nodes: 0,
                budget: budget.saturating_sub(nodes),
            };
            let mut clique = vec![v];
            let found = search.extend(&g.adjacency[c][v], k - 1, &mut clique)?;
            nodes += search.nodes;
            if !found {
                return Ok(CliqueReport {
                    holds: false,
                    witnesses: Vec::new(),
                    failure: Some((v, c)),
                    nodes,
                });
            }
            clique.sort_unstable();
            witnesses[v][c] = clique;
        }
    }
    Ok(CliqueReport {
        holds: true,
        witnesses,
        failure: None,
        nodes,
    })
}

/// `2 t (k - 1)` vertices in groups `G(i, s)`, `i < t`, `s` in {0, 1}, of
/// `k - 1` vertices each. Each group is a clique of colour `i`; for `i < j`,
/// `G(i, s)` and `G(j, s')` are joined in colour `j` when `s = s'` and in
/// colour `i` otherwise. For `t = 2` this is the graph of the 4(k-1)-brick
/// quadrant partition.
pub fn fig9_graph(k: usize, colors: usize) -> Result<TwoColoredGraph, GraphError> {
    if k < 2 {
        return Err(GraphError::TooSmall { name: "k", min: 2, got: k });
    }
    if colors < 2 {
        return Err(GraphError::TooSmall { name: "colors", min: 2, got: colors });
    }
    let size = k - 1;
    let group = |i: usize, s: usize| (2 * i + s) * size..(2 * i + s + 1) * size;
    let mut g = TwoColoredGraph::new(2 * colors * size, colors);
    for i in 0..colors {
        for s in 0..2 {
            for u in group(i, s) {
                for v in group(i, s) {
                    g.add_edge(i, u, v);
                }
                for j in (i + 1)..colors {
                    for t in 0..2 {
                        let color = if s == t { j } else { i };
                        for v in group(j, t) {
                            g.add_edge(color, u, v);
                        }
                    }
                }
            }
        }
    }
    Ok(g)
}

/// Lower bound on the vertex count of a red/blue graph in which every vertex
/// lies in a monochromatic `K_k` of each colour, from iterating
/// `c_i = 2 sqrt((k - i - 1) / (k - 1) * c_(i-1))` with `c_0 = 2`; the bound
/// is `max_i c_i (k - 1)`.
pub fn prop43_lower(k: usize) -> Result<BoundValue, GraphError> {
    if k < 3 {
        return Err(GraphError::TooSmall { name: "k", min: 3, got: k });
    }
    let km1 = (k - 1) as f64;
    let mut c = 2.0f64;
    let mut best = c;
    for i in 1..=(k - 2) {
        let ratio = (k - i - 1) as f64 / km1;
        c = 2.0 * (ratio * c).sqrt();
        best = best.max(c);
        if c < best * 0.5 {
            break;
        }
    }
    Ok(BoundValue {
        name: "clique_cover_lower",
        value: BoundNumber::Approx(best * km1),
        valid_for: Validity { k: Some(k), ..Default::default() },
    })
}

/// The closed form `max_i 4 * 2^(-1/2^(i+1)) * (1 - i/(k-1))^(1 - 1/2^(i+1)) * (k - 1)`.
/// It can sit slightly above [`prop43_lower`] for small `k`, so it is kept
/// for comparison only.
pub fn clique_bound_closed_form(k: usize) -> Result<BoundValue, GraphError> {
    if k < 3 {
        return Err(GraphError::TooSmall { name: "k", min: 3, got: k });
    }
    let km1 = (k - 1) as f64;
    let best = (1..=(k - 2).min(64))
        .map(|i| {
            let e = 0.5f64.powi(i as i32 + 1);
            4.0 * 2f64.powf(-e) * (1.0 - i as f64 / km1).powf(1.0 - e)
        })
        .fold(0.0f64, f64::max);
    Ok(BoundValue {
        name: "clique_cover_closed_form",
        value: BoundNumber::Approx(best * km1),
        valid_for: Validity { k: Some(k), ..Default::default() },
    })
}

//! Depth-first branch-and-bound. Each node picks the demanded point with the
//! fewest usable candidates and branches on which of them is the first
//! (lowest index) chosen cover of that point; earlier siblings are banned in
//! later branches so every cover is visited once.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::geometry::{verify_cover, CoverMode, DiscreteBox};

use super::{Compiled, CoverInstance, SearchBudget, SearchResult};

const NONE: usize = usize::MAX;

struct Shared {
    best: AtomicUsize,
    solution: Mutex<Option<Vec<usize>>>,
    nodes: AtomicU64,
    stop: AtomicBool,
    budget_hit: AtomicBool,
    reached_bound: AtomicBool,
}

struct Solver<'a> {
    instance: &'a CoverInstance,
    compiled: &'a Compiled,
    shared: &'a Shared,
    budget: &'a SearchBudget,
    deadline: Instant,
    exact: bool,
    demand: Vec<u32>,
    remaining: u64,
    banned: Vec<u32>,
    blocked: Vec<u32>,
    chosen: Vec<usize>,
    pending_nodes: u64,
}

impl<'a> Solver<'a> {
    fn new(
        instance: &'a CoverInstance,
        compiled: &'a Compiled,
        shared: &'a Shared,
        budget: &'a SearchBudget,
        deadline: Instant,
    ) -> Self {
        let t = instance.multiplicity as u32;
        Self {
            instance,
            compiled,
            shared,
            budget,
            deadline,
            exact: instance.mode == CoverMode::Exact,
            demand: vec![t; compiled.points],
            remaining: u64::from(t) * compiled.points as u64,
            banned: vec![0; compiled.cover.len()],
            blocked: vec![0; compiled.cover.len()],
            chosen: Vec::new(),
            pending_nodes: 0,
        }
    }

    fn usable(&self, c: usize) -> bool {
        self.banned[c] == 0 && self.blocked[c] == 0
    }

    /// Takes candidate `c`; returns the points whose demand dropped.
    fn apply(&mut self, c: usize) -> Vec<u32> {
        self.banned[c] += 1;
        self.chosen.push(c);
        let mut dropped = Vec::with_capacity(self.compiled.cover[c].len());
        for &p in &self.compiled.cover[c] {
            let p = p as usize;
            if self.demand[p] == 0 {
                continue;
            }
            self.demand[p] -= 1;
            self.remaining -= 1;
            dropped.push(p as u32);
            if self.exact && self.demand[p] == 0 {
                for &c2 in &self.compiled.through[p] {
                    self.blocked[c2 as usize] += 1;
                }
            }
        }
        dropped
    }

    fn undo(&mut self, c: usize, dropped: &[u32]) {
        for &p in dropped {
            let p = p as usize;
            if self.exact && self.demand[p] == 0 {
                for &c2 in &self.compiled.through[p] {
                    self.blocked[c2 as usize] -= 1;
                }
            }
            self.demand[p] += 1;
            self.remaining += 1;
        }
        self.chosen.pop();
        self.banned[c] -= 1;
    }

    fn tick(&mut self) -> bool {
        if self.shared.stop.load(Ordering::Relaxed) {
            return false;
        }
        self.pending_nodes += 1;
        if self.pending_nodes == 1024 {
            let total = self.shared.nodes.fetch_add(self.pending_nodes, Ordering::Relaxed) + self.pending_nodes;
            self.pending_nodes = 0;
            if total >= self.budget.max_nodes || Instant::now() >= self.deadline {
                self.shared.budget_hit.store(true, Ordering::Relaxed);
                self.shared.stop.store(true, Ordering::Relaxed);
                return false;
            }
        }
        true
    }

    fn flush(&mut self) {
        self.shared.nodes.fetch_add(self.pending_nodes, Ordering::Relaxed);
        self.pending_nodes = 0;
    }

    fn record(&mut self) {
        let size = self.chosen.len();
        let mut slot = self.shared.solution.lock().expect("solution lock");
        if size >= self.shared.best.load(Ordering::Relaxed) {
            return;
        }
        let mut sol = self.chosen.clone();
        sol.sort_unstable();
        *slot = Some(sol);
        self.shared.best.store(size, Ordering::Relaxed);
        if self.instance.known_lower_bound.is_some_and(|b| size <= b) {
            self.shared.reached_bound.store(true, Ordering::Relaxed);
            self.shared.stop.store(true, Ordering::Relaxed);
        } else if self.budget.stop_at.is_some_and(|s| size <= s) {
            self.shared.stop.store(true, Ordering::Relaxed);
        }
    }

    /// Covers still needed beyond the current ones.
    fn extra_needed(&self) -> usize {
        let largest = (0..self.compiled.cover.len())
            .filter(|&c| self.usable(c))
            .map(|c| self.compiled.cover[c].len())
            .max()
            .unwrap_or(0);
        if largest == 0 {
            return NONE;
        }
        let by_volume = self.remaining.div_ceil(largest as u64) as usize;
        let by_point = self.demand.iter().copied().max().unwrap_or(0) as usize;
        by_volume.max(by_point)
    }

    /// Demanded point with the fewest usable candidates, or `None` at a dead end.
    fn select(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for p in 0..self.compiled.points {
            let need = self.demand[p] as usize;
            if need == 0 {
                continue;
            }
            let count = self.compiled.through[p]
                .iter()
                .filter(|&&c| self.usable(c as usize))
                .count();
            if count < need {
                return None;
            }
            let slack = count - need;
            if best.is_none_or(|(s, _)| slack < s) {
                best = Some((slack, p));
                if slack == 0 {
                    break;
                }
            }
        }
        best.map(|(_, p)| p)
    }

    fn dfs(&mut self) {
        if !self.tick() {
            return;
        }
        if self.remaining == 0 {
            self.record();
            return;
        }
        let size = self.chosen.len();
        let extra = self.extra_needed();
        if extra == NONE || size + extra >= self.shared.best.load(Ordering::Relaxed) {
            return;
        }
        let Some(p) = self.select() else { return };
        let options: Vec<usize> = self.compiled.through[p]
            .iter()
            .map(|&c| c as usize)
            .filter(|&c| self.usable(c))
            .collect();
        self.branch(&options, |_| true);
    }

    /// Tries each option as the first chosen cover of the branching point,
    /// skipping those rejected by `explore` but still banning them for later
    /// siblings.
    fn branch(&mut self, options: &[usize], mut explore: impl FnMut(usize) -> bool) {
        let size = self.chosen.len();
        for (i, &c) in options.iter().enumerate() {
            if self.shared.stop.load(Ordering::Relaxed) {
                options[..i].iter().for_each(|&b| self.banned[b] -= 1);
                return;
            }
            if explore(i) && size + 1 < self.shared.best.load(Ordering::Relaxed) {
                let dropped = self.apply(c);
                self.dfs();
                self.undo(c, &dropped);
            }
            self.banned[c] += 1;
        }
        options.iter().for_each(|&c| self.banned[c] -= 1);
    }
}

/// Candidate permutations induced by symmetries of the ambient that fix the
/// all-ones corner and map the candidate set to itself: swaps of equal-length
/// axes and swaps of adjacent coordinates above 1.
fn corner_symmetries(instance: &CoverInstance) -> Vec<Vec<usize>> {
    let ambient = &instance.ambient;
    let d = ambient.dim();
    let index: HashMap<&DiscreteBox, usize> =
        instance.candidates.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut maps: Vec<Box<dyn Fn(&DiscreteBox) -> DiscreteBox>> = Vec::new();
    for a in 0..d {
        for b in (a + 1)..d {
            if ambient.side(a) == ambient.side(b) {
                maps.push(Box::new(move |c: &DiscreteBox| {
                    let mut m = c.masks().to_vec();
                    m.swap(a, b);
                    DiscreteBox::from_masks(m).expect("nonempty")
                }));
            }
        }
        for x in 2..ambient.side(a) {
            maps.push(Box::new(move |c: &DiscreteBox| {
                c.map_factor(a, |v| {
                    let w = if v == x { x + 1 } else if v == x + 1 { x } else { v };
                    1u64 << (w - 1)
                })
            }));
        }
    }
    maps.iter()
        .filter_map(|f| {
            instance
                .candidates
                .iter()
                .map(|c| index.get(&f(c)).copied())
                .collect::<Option<Vec<usize>>>()
        })
        .collect()
}

/// For each candidate, whether it has the smallest index in its orbit.
fn orbit_minima(instance: &CoverInstance) -> Vec<bool> {
    let n = instance.candidates.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for perm in corner_symmetries(instance) {
        for (i, &j) in perm.iter().enumerate() {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                // Keep the smaller index as root so roots are orbit minima.
                let (lo, hi) = if ri < rj { (ri, rj) } else { (rj, ri) };
                parent[hi] = lo;
            }
        }
    }
    (0..n).map(|i| find(&mut parent, i) == i).collect()
}

/// Exact minimum cover by branch-and-bound.
///
/// At the root only candidates that are smallest in their symmetry orbit are
/// tried as the first cover of the all-ones corner. With several threads the
/// root branches are dealt out round-robin and share the incumbent size.
pub fn solve_cover(instance: &CoverInstance, budget: &SearchBudget) -> SearchResult {
    let start = Instant::now();
    let deadline = start + Duration::from_secs(budget.wall_seconds);
    let compiled = Compiled::new(instance);
    let shared = Shared {
        best: AtomicUsize::new(NONE),
        solution: Mutex::new(None),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        budget_hit: AtomicBool::new(false),
        reached_bound: AtomicBool::new(false),
    };
    let minima = orbit_minima(instance);
    let root_options: Vec<usize> = compiled.through[0].iter().map(|&c| c as usize).collect();
    let threads = budget.threads.max(1);

    let run = |worker: usize| {
        let mut solver = Solver::new(instance, &compiled, &shared, budget, deadline);
        if solver.tick() {
            let mut slot = 0usize;
            solver.branch(&root_options, |i| {
                let c = root_options[i];
                if !minima[c] {
                    return false;
                }
                slot += 1;
                (slot - 1) % threads == worker
            });
        }
        solver.flush();
    };
    if threads == 1 {
        run(0);
    } else {
        std::thread::scope(|s| {
            for w in 0..threads {
                let run = &run;
                s.spawn(move || run(w));
            }
        });
    }

    let solution = shared.solution.into_inner().expect("solution lock");
    let best = solution.map(|sol| instance.family(&sol));
    if let Some(fam) = &best {
        let report = verify_cover(fam, instance.multiplicity, instance.mode);
        assert!(report.cover_ok, "search produced an invalid cover");
    }
    let budget_hit = shared.budget_hit.load(Ordering::Relaxed);
    let stopped_early = shared.stop.load(Ordering::Relaxed);
    SearchResult {
        best_size: best.as_ref().map(|f| f.len()),
        best,
        proven_optimal: shared.reached_bound.load(Ordering::Relaxed) || !stopped_early,
        budget_exhausted: budget_hit,
        nodes: shared.nodes.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Ambient;
    use crate::search::CandidateKind;

    fn solve(sides: Vec<usize>, kind: CandidateKind, t: usize, mode: CoverMode) -> SearchResult {
        let inst = CoverInstance::from_kind(Ambient::new(sides).unwrap(), kind, t, mode).unwrap();
        solve_cover(&inst, &SearchBudget::default())
    }

    #[test]
    fn forced_singletons() {
        let r = solve(vec![3, 3, 3], CandidateKind::OddProperBox, 1, CoverMode::Exact);
        assert_eq!(r.best_size, Some(27));
        assert!(r.proven_optimal);
    }

    #[test]
    fn one_dimensional_odd_bricks() {
        let r = solve(vec![5], CandidateKind::OddProperBrick, 1, CoverMode::Exact);
        assert_eq!(r.best_size, Some(3));
        assert!(r.proven_optimal);
    }

    #[test]
    fn small_double_cover() {
        let r = solve(vec![3, 3], CandidateKind::ProperBox, 2, CoverMode::Exact);
        assert_eq!(r.best_size, Some(6));
        assert!(r.proven_optimal);
        let r = solve(vec![3, 3], CandidateKind::ProperBox, 2, CoverMode::AtLeast);
        assert!(r.best_size.unwrap() <= 6);
    }

    #[test]
    fn infeasible_instance() {
        let amb = Ambient::cube(3, 1).unwrap();
        let only = DiscreteBox::from_sets(&[vec![1, 2]]).unwrap();
        let inst = CoverInstance::new(amb, vec![only], 1, CoverMode::Exact).unwrap();
        let r = solve_cover(&inst, &SearchBudget::default());
        assert_eq!(r.best_size, None);
        assert!(r.proven_optimal);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let inst = CoverInstance::from_kind(
            Ambient::cube(3, 3).unwrap(),
            CandidateKind::ProperBox,
            2,
            CoverMode::Exact,
        )
        .unwrap();
        let budget = SearchBudget { max_nodes: 2000, ..Default::default() };
        let r = solve_cover(&inst, &budget);
        assert!(r.budget_exhausted);
        assert!(!r.proven_optimal);
    }

    #[test]
    fn threads_agree_on_optimum() {
        let inst = CoverInstance::from_kind(
            Ambient::cube(5, 2).unwrap(),
            CandidateKind::OddProperBrick,
            1,
            CoverMode::Exact,
        )
        .unwrap();
        let one = solve_cover(&inst, &SearchBudget::default());
        let four = solve_cover(&inst, &SearchBudget { threads: 4, ..Default::default() });
        assert_eq!(one.best_size, Some(9));
        assert_eq!(four.best_size, Some(9));
        assert!(one.proven_optimal && four.proven_optimal);
    }

    #[test]
    fn symmetry_orbits() {
        let inst = CoverInstance::from_kind(
            Ambient::cube(3, 2).unwrap(),
            CandidateKind::ProperBox,
            1,
            CoverMode::Exact,
        )
        .unwrap();
        let minima = orbit_minima(&inst);
        // Factors {1},{1,2},{1,3},{2},{2,3},{3}: through (1,1) the classes
        // are {1}x{1}, {1}x{1,*}~{1,*}x{1}, and {1,*}x{1,*}.
        let through: Vec<usize> = (0..inst.candidates.len())
            .filter(|&i| inst.candidates[i].contains(&[1, 1]) && minima[i])
            .collect();
        assert_eq!(through.len(), 3);
    }
}

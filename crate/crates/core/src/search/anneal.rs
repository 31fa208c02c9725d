//! Simulated annealing over sets of candidates. Energy is
//! `VIOLATION_WEIGHT * coverage violation + size`; moves add, remove or swap
//! one candidate. Cooling is geometric and the chain restarts from the best
//! cover found once it stops improving.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{verify_cover, CoverMode};

use super::{Compiled, CoverInstance, SearchBudget, SearchResult};

const START_TEMPERATURE: f64 = 2.0;
const COOLING: f64 = 0.999;
const VIOLATION_WEIGHT: i64 = 2;
const STAGNATION_STEPS: u64 = 20_000;

/// Indexed set with O(1) insert, remove and uniform sampling.
struct Bag {
    items: Vec<usize>,
    pos: Vec<usize>,
}

impl Bag {
    fn new(universe: usize) -> Self {
        Self {
            items: Vec::new(),
            pos: vec![usize::MAX; universe],
        }
    }

    fn contains(&self, x: usize) -> bool {
        self.pos[x] != usize::MAX
    }

    fn insert(&mut self, x: usize) {
        if !self.contains(x) {
            self.pos[x] = self.items.len();
            self.items.push(x);
        }
    }

    fn remove(&mut self, x: usize) {
        let i = self.pos[x];
        if i == usize::MAX {
            return;
        }
        let last = self.items.pop().expect("nonempty");
        if last != x {
            self.items[i] = last;
            self.pos[last] = i;
        }
        self.pos[x] = usize::MAX;
    }

    fn sample(&self, rng: &mut impl Rng) -> Option<usize> {
        if self.items.is_empty() {
            None
        } else {
            Some(self.items[rng.gen_range(0..self.items.len())])
        }
    }

    fn len(&self) -> usize {
        self.items.len()
    }
}

struct Chain<'a> {
    compiled: &'a Compiled,
    t: u32,
    exact: bool,
    cover: Vec<u32>,
    chosen: Bag,
    deficit: Bag,
    violation: i64,
}

impl<'a> Chain<'a> {
    fn new(compiled: &'a Compiled, t: u32, exact: bool) -> Self {
        let mut deficit = Bag::new(compiled.points);
        (0..compiled.points).for_each(|p| deficit.insert(p));
        Self {
            compiled,
            t,
            exact,
            cover: vec![0; compiled.points],
            chosen: Bag::new(compiled.cover.len()),
            deficit,
            violation: i64::from(t) * compiled.points as i64,
        }
    }

    fn point_violation(&self, c: u32) -> i64 {
        let (c, t) = (i64::from(c), i64::from(self.t));
        if self.exact {
            (c - t).abs()
        } else {
            (t - c).max(0)
        }
    }

    fn energy(&self) -> i64 {
        VIOLATION_WEIGHT * self.violation + self.chosen.len() as i64
    }

    fn set_point(&mut self, p: usize, value: u32) {
        self.violation += self.point_violation(value) - self.point_violation(self.cover[p]);
        self.cover[p] = value;
        if value < self.t {
            self.deficit.insert(p);
        } else {
            self.deficit.remove(p);
        }
    }

    fn add(&mut self, c: usize) {
        self.chosen.insert(c);
        for &p in &self.compiled.cover[c] {
            let p = p as usize;
            self.set_point(p, self.cover[p] + 1);
        }
    }

    fn remove(&mut self, c: usize) {
        self.chosen.remove(c);
        for &p in &self.compiled.cover[c] {
            let p = p as usize;
            self.set_point(p, self.cover[p] - 1);
        }
    }

    fn reset_to(&mut self, chosen: &[usize]) {
        for c in self.chosen.items.clone() {
            self.remove(c);
        }
        for &c in chosen {
            self.add(c);
        }
    }

    /// An unchosen candidate through a short point, or through `near` when given.
    fn pick_new(&self, rng: &mut impl Rng, near: Option<usize>) -> Option<usize> {
        let p = match near {
            Some(c) => {
                let pts = &self.compiled.cover[c];
                pts[rng.gen_range(0..pts.len())] as usize
            }
            None => match self.deficit.sample(rng) {
                Some(p) => p,
                None => rng.gen_range(0..self.compiled.points),
            },
        };
        let through = &self.compiled.through[p];
        if through.is_empty() {
            return None;
        }
        for _ in 0..8 {
            let c = through[rng.gen_range(0..through.len())] as usize;
            if !self.chosen.contains(c) {
                return Some(c);
            }
        }
        None
    }
}

struct ChainOutcome {
    best: Option<Vec<usize>>,
    steps: u64,
    budget_hit: bool,
}

fn run_chain(instance: &CoverInstance, compiled: &Compiled, budget: &SearchBudget, seed: u64, deadline: Instant, max_steps: u64) -> ChainOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chain = Chain::new(compiled, instance.multiplicity as u32, instance.mode == CoverMode::Exact);
    let mut best: Option<Vec<usize>> = None;
    let mut best_energy = chain.energy();
    let mut since_improvement = 0u64;
    let mut temperature = START_TEMPERATURE;
    let target = budget.stop_at.into_iter().chain(instance.known_lower_bound).max();
    let mut steps = 0u64;
    let budget_hit = loop {
        if steps >= max_steps {
            break true;
        }
        if steps.is_multiple_of(1024) && Instant::now() >= deadline {
            break true;
        }
        steps += 1;

        let before = chain.energy();
        let roll: f64 = rng.gen();
        let undo: Option<(Option<usize>, Option<usize>)> = if roll < 0.4 || chain.chosen.len() == 0 {
            chain.pick_new(&mut rng, None).map(|c| {
                chain.add(c);
                (Some(c), None)
            })
        } else if roll < 0.7 {
            chain.chosen.sample(&mut rng).map(|c| {
                chain.remove(c);
                (None, Some(c))
            })
        } else {
            let out = chain.chosen.sample(&mut rng).expect("nonempty");
            chain.pick_new(&mut rng, Some(out)).map(|inc| {
                chain.remove(out);
                chain.add(inc);
                (Some(inc), Some(out))
            })
        };
        let Some((added, removed)) = undo else { continue };
        let delta = chain.energy() - before;
        let accept = delta <= 0 || rng.gen::<f64>() < (-(delta as f64) / temperature).exp();
        if !accept {
            if let Some(c) = added {
                chain.remove(c);
            }
            if let Some(c) = removed {
                chain.add(c);
            }
        }
        temperature = (temperature * COOLING).max(1e-3);

        if chain.violation == 0 && best.as_ref().is_none_or(|b| chain.chosen.len() < b.len()) {
            let mut sol = chain.chosen.items.clone();
            sol.sort_unstable();
            best = Some(sol);
            if target.is_some_and(|s| chain.chosen.len() <= s) {
                break false;
            }
        }
        if chain.energy() < best_energy {
            best_energy = chain.energy();
            since_improvement = 0;
        } else {
            since_improvement += 1;
        }
        if since_improvement >= STAGNATION_STEPS {
            since_improvement = 0;
            temperature = START_TEMPERATURE;
            if let Some(b) = &best {
                chain.reset_to(b);
            }
            best_energy = chain.energy();
        }
    };
    ChainOutcome { best, steps, budget_hit }
}

/// Stochastic local search for a small cover. Each thread runs an
/// independent chain seeded with `seed + thread`; the smallest cover wins,
/// ties going to the lowest thread. Never claims optimality.
pub fn anneal_cover(instance: &CoverInstance, budget: &SearchBudget) -> SearchResult {
    let start = Instant::now();
    let deadline = start + Duration::from_secs(budget.wall_seconds);
    let compiled = Compiled::new(instance);
    let threads = budget.threads.max(1);
    let per_chain = budget.max_nodes / threads as u64;
    let outcomes: Vec<ChainOutcome> = if threads == 1 {
        vec![run_chain(instance, &compiled, budget, budget.seed, deadline, budget.max_nodes)]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads)
                .map(|w| {
                    let compiled = &compiled;
                    s.spawn(move || {
                        run_chain(instance, compiled, budget, budget.seed.wrapping_add(w as u64), deadline, per_chain)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("chain panicked")).collect()
        })
    };
    let nodes = outcomes.iter().map(|o| o.steps).sum();
    let winner = outcomes
        .iter()
        .filter_map(|o| o.best.as_ref())
        .min_by_key(|b| b.len());
    let budget_exhausted = outcomes.iter().all(|o| o.budget_hit);
    let best = winner.map(|sol| instance.family(sol));
    if let Some(fam) = &best {
        let report = verify_cover(fam, instance.multiplicity, instance.mode);
        assert!(report.cover_ok, "annealing produced an invalid cover");
    }
    SearchResult {
        best_size: best.as_ref().map(|f| f.len()),
        best,
        proven_optimal: false,
        budget_exhausted,
        nodes,
        elapsed: start.elapsed(),
    }
}

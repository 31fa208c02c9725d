//! Acceptance suite: one PASS/FAIL line per criterion, with timings.
//! Exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use boxkit::bounds::{growth_root, kp_trivial_bounds, lower_odd_proper, parity_count, BoundNumber, ParityMode, PiercingKind};
use boxkit::constructions::{
    intermediate_library, label_type_counts, partition_25, predicted_size, product, quadrant_construction, realize,
    stack_lemma, Figure,
};
use boxkit::format::{write_partition_text, PartitionDocument};
use boxkit::geometry::{verify_cover, Ambient, BoxFamily, CoverMode};
use boxkit::graphq::{clique_property_check, fig9_graph, partition_to_graph, prop43_lower};
use boxkit::search::{anneal_cover, solve_cover, CandidateKind, CoverInstance, SearchBudget};
use num_bigint::BigInt;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_secs: f64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_secs, || {
        format!("took {:.2}s, limit {limit_secs}s", elapsed.as_secs_f64())
    })
}

fn odd_proper_partition(f: &BoxFamily) -> Result<(), String> {
    let r = verify_cover(f, 1, CoverMode::Exact);
    ensure(r.is_partition, || format!("not a partition, first violation {:?}", r.first_violation))?;
    ensure(r.all_odd && r.all_proper, || "some box is not odd and proper".into())
}

fn listing_fidelity() -> Outcome {
    let start = Instant::now();
    let p = partition_25();
    odd_proper_partition(&p)?;
    ensure(p.len() == 25 && p.ambient().sides() == [5, 5, 5], || "wrong size or ambient".into())?;
    within(start.elapsed(), 1.0)?;
    let text = write_partition_text(&PartitionDocument::new(p));
    let fixture = include_str!("fixtures/listing_25.txt");
    ensure(text == fixture, || "serialization differs from the listing".into())?;
    Ok("25 odd proper boxes, listing byte-identical".into())
}

fn product_625() -> Outcome {
    let p = partition_25();
    let start = Instant::now();
    let q = product(&p, &p).map_err(|e| e.to_string())?;
    odd_proper_partition(&q)?;
    within(start.elapsed(), 10.0)?;
    ensure(q.len() == 625 && q.ambient().volume() == 15_625, || format!("{} boxes", q.len()))?;
    Ok("625 boxes over [5]^6".into())
}

fn parity_identities() -> Outcome {
    let start = Instant::now();
    let mut checked = 0usize;
    for n in [3usize, 5, 7, 9, 11] {
        let half = 1u64 << (n - 2);
        for mask in 1u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            let full = set.len() == n;
            let all = parity_count(n, &set, ParityMode::AllOdd).map_err(|e| e.to_string())?;
            let want = if full { 2 * half } else { half };
            ensure(all.odd_hits == want, || format!("all_odd n={n} B={set:?}: {} != {want}", all.odd_hits))?;
            let proper = parity_count(n, &set, ParityMode::ProperOdd).map_err(|e| e.to_string())?;
            let want = match (full, set.len() % 2 == 1) {
                (true, _) => 2 * half - 1,
                (false, true) => half - 1,
                (false, false) => half,
            };
            ensure(proper.odd_hits == want, || format!("proper_odd n={n} B={set:?}: {} != {want}", proper.odd_hits))?;
            checked += 1;
        }
    }
    within(start.elapsed(), 5.0)?;
    Ok(format!(
        "{checked} sets: all_odd = 2^(n-2) for proper B, proper_odd = 2^(n-2)-1 for odd proper B \
         (B = [n] gives 2^(n-1) / 2^(n-1)-1, even B gives 2^(n-2) under proper_odd)"
    ))
}

fn odd_brick_minimum() -> Outcome {
    let start = Instant::now();
    let mut sizes = Vec::new();
    for (d, want) in [(1usize, 3usize), (2, 9)] {
        let inst = CoverInstance::from_kind(Ambient::cube(5, d).unwrap(), CandidateKind::OddProperBrick, 1, CoverMode::Exact)
            .map_err(|e| e.to_string())?;
        let budget = SearchBudget { wall_seconds: 60, ..Default::default() };
        let r = solve_cover(&inst, &budget);
        ensure(r.proven_optimal && r.best_size == Some(want), || {
            format!("[5]^{d}: best {:?}, proven {}", r.best_size, r.proven_optimal)
        })?;
        let lower = lower_odd_proper(5, d).map_err(|e| e.to_string())?.value.ceil();
        ensure(BigInt::from(want) >= lower, || format!("optimum {want} below the lower bound {lower}"))?;
        sizes.push(format!("[5]^{d} = {want} ({} nodes)", r.nodes));
    }
    within(start.elapsed(), 60.0)?;
    Ok(sizes.join(", "))
}

fn quadrants() -> Outcome {
    let start = Instant::now();
    for k in 3..=8 {
        let q = quadrant_construction(2, k).map_err(|e| e.to_string())?;
        let r = verify_cover(&q, 1, CoverMode::Exact);
        ensure(r.is_partition && r.all_brick && r.all_proper, || format!("k={k}: not a proper brick partition"))?;
        ensure(q.len() == 4 * (k - 1), || format!("k={k}: {} bricks", q.len()))?;
        ensure(r.piercing_number == k, || format!("k={k}: piercing {}", r.piercing_number))?;
    }
    let q = quadrant_construction(3, 4).map_err(|e| e.to_string())?;
    let r = verify_cover(&q, 1, CoverMode::Exact);
    ensure(r.is_partition && r.all_brick, || "(3,4): not a brick partition".into())?;
    ensure(q.len() <= 48 && r.piercing_number >= 4, || format!("(3,4): {} bricks, piercing {}", q.len(), r.piercing_number))?;
    within(start.elapsed(), 10.0)?;
    Ok(format!("4(k-1) bricks for k=3..8; (3,4) uses {} bricks", q.len()))
}

fn stacking() -> Outcome {
    let start = Instant::now();
    for k in 4..=7 {
        let (a, b) = (k - 1, k - 2);
        for (fig, parts, want) in [
            (Figure::Fig3, 10, vec![(vec![a, a], 2), (vec![a], 6), (vec![b], 2)]),
            (Figure::Fig5, 24, vec![(vec![a, a], 8), (vec![a, b], 5), (vec![a], 8), (vec![b], 3)]),
        ] {
            let ip = intermediate_library(fig, k).map_err(|e| e.to_string())?;
            let (x, y) = fig.stack_corners().expect("stackable figure");
            let s = stack_lemma(&ip, &x, &y, k).map_err(|e| e.to_string())?;
            let want: BTreeMap<Vec<usize>, usize> = want.into_iter().collect();
            let got = label_type_counts(&s);
            ensure(s.dim() == ip.dim() + 1 && s.len() == parts, || format!("{fig} k={k}: {} parts", s.len()))?;
            ensure(got == want, || format!("{fig} k={k}: label counts {got:?}"))?;
        }
    }
    within(start.elapsed(), 1.0)?;
    Ok("fig3 -> (2,6,2), fig5 -> (8,5,8,3) for k=4..7".into())
}

fn realized(fig: Figure, limit: usize, want_nonbrick: bool) -> Outcome {
    let start = Instant::now();
    let ip = intermediate_library(fig, 3).map_err(|e| e.to_string())?;
    let predicted = predicted_size(&ip, 3, 0).map_err(|e| e.to_string())?;
    let p = realize(&ip, 3, 0).map_err(|e| e.to_string())?;
    let r = verify_cover(&p, 1, CoverMode::Exact);
    ensure(r.is_partition && r.all_proper, || format!("not a proper partition: {:?}", r.first_violation))?;
    ensure(r.piercing_number >= 3, || format!("piercing {}", r.piercing_number))?;
    ensure(predicted == limit as u128, || format!("predicted {predicted}, expected {limit}"))?;
    ensure(p.len() <= limit, || format!("{} parts", p.len()))?;
    ensure(p.ambient().cube_side().is_some(), || "ambient is not a cube".into())?;
    if want_nonbrick {
        ensure(!r.all_brick, || "every part is a brick".into())?;
    } else {
        ensure(r.all_brick, || "some part is not a brick".into())?;
    }
    within(start.elapsed(), 10.0)?;
    Ok(format!(
        "{} parts over {}, predicted {predicted}, piercing {}",
        p.len(),
        p.ambient(),
        r.piercing_number
    ))
}

fn double_cover() -> Outcome {
    let inst = CoverInstance::from_kind(Ambient::cube(3, 3).unwrap(), CandidateKind::ProperBox, 2, CoverMode::Exact)
        .map_err(|e| e.to_string())?;
    let budget = SearchBudget { stop_at: Some(11), threads: 4, seed: 0, ..Default::default() };
    let r = anneal_cover(&inst, &budget);
    let fam = r.best.ok_or("no cover found")?;
    ensure(fam.len() <= 11, || format!("best cover has {} boxes", fam.len()))?;
    let v = verify_cover(&fam, 2, CoverMode::Exact);
    ensure(v.cover_ok && v.all_proper, || "found family does not re-verify".into())?;
    Ok(format!("{} proper boxes, {} steps", fam.len(), r.nodes))
}

fn calculators() -> Outcome {
    let near = |x: f64, want: f64, tol: f64| (x - want).abs() <= tol;
    let cubic = growth_root(&[0.0, 13.0, 9.0]).map_err(|e| e.to_string())?.root;
    ensure(near(cubic, 3.91, 0.01), || format!("x^3 = 13x + 9 root {cubic}"))?;
    let sq = growth_root(&[0.0, 15.0]).map_err(|e| e.to_string())?.root;
    ensure(near(sq, 3.873, 0.001), || format!("sqrt 15 gave {sq}"))?;
    let quart = growth_root(&[0.0, 0.0, 0.0, 61.0]).map_err(|e| e.to_string())?.root;
    ensure(near(quart, 2.795, 0.005), || format!("fourth root of 61 gave {quart}"))?;
    for d in 1..=8 {
        let v = lower_odd_proper(3, d).map_err(|e| e.to_string())?.value;
        let want = BigInt::from(3u32).pow(d as u32);
        ensure(matches!(&v, BoundNumber::Exact(q) if q.is_integer() && *q.numer() == want), || {
            format!("lower_odd_proper(3,{d}) = {v}")
        })?;
    }
    let (lo, hi) = kp_trivial_bounds(3, 3, PiercingKind::Brick).map_err(|e| e.to_string())?;
    ensure(lo.value.as_integer() == Some(20.into()) && hi.value.as_integer() == Some(27.into()), || {
        format!("kp_trivial_bounds(brick,3,3) = ({}, {})", lo.value, hi.value)
    })?;
    Ok(format!("roots {cubic:.4}, {sq:.4}, {quart:.4}; 3^d exact; (20,27)"))
}

fn graph_reduction() -> Outcome {
    for k in 3..=6 {
        let g = fig9_graph(k, 2).map_err(|e| e.to_string())?;
        ensure(g.vertex_count() == 4 * (k - 1), || format!("fig9 k={k}: {} vertices", g.vertex_count()))?;
        let r = clique_property_check(&g, k).map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("fig9 k={k}: fails at {:?}", r.failure))?;
    }
    for k in 3..=8 {
        let g = partition_to_graph(&quadrant_construction(2, k).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let r = clique_property_check(&g, k).map_err(|e| e.to_string())?;
        ensure(r.holds && g.conflicts.is_empty(), || format!("quadrant k={k}: fails at {:?}", r.failure))?;
    }
    for k in [3usize, 4, 5, 10, 100, 1000, 10_000] {
        let b = prop43_lower(k).map_err(|e| e.to_string())?.value.to_f64();
        ensure(b <= (4 * (k - 1) + 1) as f64, || format!("bound {b} exceeds 4(k-1)+1 at k={k}"))?;
    }
    let ratio = prop43_lower(10_000).map_err(|e| e.to_string())?.value.to_f64() / 10_000.0;
    ensure(ratio > 3.5, || format!("ratio {ratio} at k=10^4"))?;
    Ok(format!("fig9 k=3..6, quadrant graphs k=3..8; bound/k = {ratio:.4} at k=10^4"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("25-box partition of [5]^3", listing_fidelity),
        ("625-box product over [5]^6", product_625),
        ("parity identities", parity_identities),
        ("odd proper brick minimum on [5]^1, [5]^2", odd_brick_minimum),
        ("quadrant piercing constructions", quadrants),
        ("stacked intermediate partitions", stacking),
        ("61-brick 3-piercing partition", || realized(Figure::Fig6, 61, false)),
        ("24-box 3-piercing partition", || realized(Figure::Fig8, 24, true)),
        ("double cover of [3]^3 by 11 boxes", double_cover),
        ("bound calculators", calculators),
        ("graph reduction", graph_reduction),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2}. {name}: {detail} [{secs:.3}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}. {name}: {why} [{secs:.3}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

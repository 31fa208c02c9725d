use std::collections::BTreeSet;

use boxkit::bounds::{lower_odd_basic, lower_odd_proper, parity_count, ParityMode};
use boxkit::constructions::{intermediate_library, predicted_size, realize, Figure, PiercingVector};
use boxkit::format::{
    parse_partition_structured, parse_partition_text, write_partition_structured, write_partition_text,
    DocumentMeta, PartitionDocument,
};
use boxkit::geometry::{classify_box, piercing_number, verify_cover, Ambient, BoxFamily, CoverMode, DiscreteBox};
use boxkit::search::{enumerate_candidates, solve_cover, CandidateKind, CoverInstance, SearchBudget};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::sample::subsequence;

fn ambient_strategy(max_d: usize, max_side: usize) -> impl Strategy<Value = Ambient> {
    prop::collection::vec(2..=max_side, 1..=max_d).prop_map(|s| Ambient::new(s).unwrap())
}

fn box_in(ambient: &Ambient) -> impl Strategy<Value = DiscreteBox> {
    let factors: Vec<_> = ambient.sides().iter().map(|&s| 1u64..(1u64 << s)).collect();
    factors.prop_map(|masks| DiscreteBox::from_masks(masks).unwrap())
}

fn family_strategy(max_d: usize, max_side: usize, max_boxes: usize) -> impl Strategy<Value = BoxFamily> {
    ambient_strategy(max_d, max_side).prop_flat_map(move |amb| {
        prop::collection::vec(box_in(&amb), 1..=max_boxes)
            .prop_map(move |boxes| BoxFamily::new(amb.clone(), boxes).unwrap())
    })
}

fn document_strategy() -> impl Strategy<Value = PartitionDocument> {
    family_strategy(3, 6, 8).prop_flat_map(|family| {
        let d = family.ambient().dim();
        let n = family.len();
        let labels = prop::option::of(prop::collection::vec(
            prop::collection::vec(1usize..6, d).prop_map(|l| PiercingVector::new(l).unwrap()),
            n,
        ));
        let meta = (
            prop::option::of("[a-z][a-z0-9_-]{0,8}"),
            prop::option::of(1usize..20),
            prop::option::of("[a-z][a-z0-9 ]{0,12}[a-z]"),
        )
            .prop_map(|(name, k, provenance)| DocumentMeta { name, k, provenance });
        (Just(family), labels, meta).prop_map(|(family, labels, meta)| PartitionDocument { family, labels, meta })
    })
}

/// Distinct boxes met by each axis-parallel line, by walking its points.
fn brute_piercing(family: &BoxFamily) -> Vec<usize> {
    let amb = family.ambient();
    (0..amb.dim())
        .map(|axis| {
            amb.points()
                .filter(|p| p[axis] == 1)
                .map(|start| {
                    let mut met = BTreeSet::new();
                    for x in 1..=amb.side(axis) {
                        let mut p = start.clone();
                        p[axis] = x;
                        met.extend((0..family.len()).filter(|&i| family.boxes()[i].contains(&p)));
                    }
                    met.len()
                })
                .min()
                .unwrap()
        })
        .collect()
}

/// Smallest subset meeting the cover condition, by enumerating all subsets.
fn brute_cover(instance: &CoverInstance) -> Option<usize> {
    let points: Vec<Vec<usize>> = instance.ambient.points().collect();
    let m = instance.candidates.len();
    (0u32..(1 << m))
        .filter(|mask| {
            points.iter().all(|p| {
                let c = (0..m).filter(|&i| mask >> i & 1 == 1 && instance.candidates[i].contains(p)).count();
                match instance.mode {
                    CoverMode::Exact => c == instance.multiplicity,
                    CoverMode::AtLeast => c >= instance.multiplicity,
                }
            })
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn text_round_trip(doc in document_strategy()) {
        let text = write_partition_text(&doc);
        prop_assert_eq!(parse_partition_text(&text).unwrap(), doc.clone());
        prop_assert_eq!(write_partition_text(&parse_partition_text(&text).unwrap()), text);
    }

    #[test]
    fn structured_round_trip(doc in document_strategy()) {
        let json = write_partition_structured(&doc);
        prop_assert_eq!(parse_partition_structured(&json).unwrap(), doc);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn classification_ignores_axis_order(
        (amb, b, perm) in ambient_strategy(4, 6).prop_flat_map(|amb| {
            let d = amb.dim();
            (Just(amb.clone()), box_in(&amb), Just((0..d).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let sides: Vec<usize> = perm.iter().map(|&a| amb.side(a)).collect();
        let masks: Vec<u64> = perm.iter().map(|&a| b.mask(a)).collect();
        let permuted = DiscreteBox::from_masks(masks).unwrap();
        let flags = classify_box(&b, &amb).unwrap();
        prop_assert_eq!(classify_box(&permuted, &Ambient::new(sides).unwrap()).unwrap(), flags);
    }

    #[test]
    fn piercing_matches_line_walk(family in family_strategy(3, 4, 6)) {
        let (overall, per_axis) = piercing_number(&family);
        let brute = brute_piercing(&family);
        prop_assert_eq!(&per_axis, &brute);
        prop_assert_eq!(overall, *brute.iter().min().unwrap());
    }

    #[test]
    fn parity_half_rule(n in (1usize..=6).prop_map(|h| 2 * h + 1), seed in any::<u32>()) {
        let mask = (seed % ((1 << n) - 2)) + 1;
        let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        let half = 1u64 << (n - 2);
        let all = parity_count(n, &set, ParityMode::AllOdd).unwrap();
        prop_assert_eq!(all.total_selectors, 2 * half);
        prop_assert_eq!(all.odd_hits, half);
        let proper = parity_count(n, &set, ParityMode::ProperOdd).unwrap();
        prop_assert_eq!(proper.total_selectors, 2 * half - 1);
        prop_assert_eq!(proper.odd_hits, if set.len() % 2 == 1 { half - 1 } else { half });
    }
}

fn transformed_library() -> impl Strategy<Value = (Figure, Vec<(bool, usize, usize)>, usize)> {
    (
        prop::sample::select(vec![Figure::Fig3, Figure::Fig4, Figure::Fig5, Figure::Fig8]),
        prop::collection::vec((any::<bool>(), 1usize..=6, 0usize..=2), 3),
        3usize..=5,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn realization_matches_prediction((fig, moves, k) in transformed_library()) {
        let mut ip = intermediate_library(fig, k).unwrap();
        for (axis, (flip, at, extra)) in moves.into_iter().enumerate().take(ip.dim()) {
            if flip {
                ip = ip.reflect(axis);
            }
            let at = at.min(ip.ambient().side(axis));
            ip = ip.stretch(axis, at, extra).unwrap();
        }
        let predicted = predicted_size(&ip, k, 0).unwrap();
        let p = realize(&ip, k, 0).unwrap();
        prop_assert_eq!(p.len() as u128, predicted);
        let r = verify_cover(&p, 1, CoverMode::Exact);
        prop_assert!(r.is_partition && r.all_proper);
        prop_assert!(r.piercing_number >= k);
    }

    #[test]
    fn solver_matches_enumeration(
        (t, exact, picked) in (1usize..=2, any::<bool>(), subsequence(
            enumerate_candidates(&Ambient::cube(3, 2).unwrap(), CandidateKind::ProperBox).unwrap(), 1..=14))
    ) {
        let mode = if exact { CoverMode::Exact } else { CoverMode::AtLeast };
        let inst = CoverInstance::new(Ambient::cube(3, 2).unwrap(), picked, t, mode).unwrap();
        let r = solve_cover(&inst, &SearchBudget::default());
        prop_assert!(r.proven_optimal);
        prop_assert_eq!(r.best_size, brute_cover(&inst));
    }

    #[test]
    fn search_never_beats_lower_bounds(
        picked in subsequence(enumerate_candidates(&Ambient::cube(5, 2).unwrap(), CandidateKind::OddProperBox).unwrap(), 10..=60)
    ) {
        let amb = Ambient::cube(5, 2).unwrap();
        let mut candidates: BTreeSet<DiscreteBox> = picked.into_iter().collect();
        candidates.extend(amb.points().map(|p| DiscreteBox::brick(&[(p[0], p[0]), (p[1], p[1])]).unwrap()));
        let inst = CoverInstance::new(amb, candidates.into_iter().collect(), 1, CoverMode::Exact).unwrap();
        let r = solve_cover(&inst, &SearchBudget::default());
        prop_assert!(r.proven_optimal);
        let size = BigInt::from(r.best_size.unwrap());
        prop_assert!(size >= lower_odd_basic(2).unwrap().value.ceil());
        prop_assert!(size >= lower_odd_proper(5, 2).unwrap().value.ceil());
    }
}

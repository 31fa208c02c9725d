use boxkit::geometry::{verify_cover, Ambient, CoverMode};
use boxkit::search::{
    anneal_cover, enumerate_candidates, export_model, parse_lp_model, solve_cover, CandidateKind, CoverInstance,
    ModelFormat, SearchBudget,
};

fn instance(n: usize, d: usize, kind: CandidateKind, t: usize) -> CoverInstance {
    CoverInstance::from_kind(Ambient::cube(n, d).unwrap(), kind, t, CoverMode::Exact).unwrap()
}

#[test]
fn candidate_counts() {
    let count = |n, d, kind| enumerate_candidates(&Ambient::cube(n, d).unwrap(), kind).unwrap().len();
    assert_eq!(count(5, 1, CandidateKind::OddProperBox), 15);
    assert_eq!(count(3, 3, CandidateKind::OddProperBox), 27);
    assert_eq!(count(5, 1, CandidateKind::OddProperBrick), 8);
    assert_eq!(count(5, 3, CandidateKind::OddProperBox), 3375);
}

#[test]
fn forced_and_small_optima() {
    let r = solve_cover(&instance(3, 3, CandidateKind::OddProperBox, 1), &SearchBudget::default());
    assert_eq!((r.best_size, r.proven_optimal), (Some(27), true));
    let r = solve_cover(&instance(5, 2, CandidateKind::OddProperBrick, 1), &SearchBudget::default());
    assert_eq!((r.best_size, r.proven_optimal), (Some(9), true));
}

#[test]
fn planar_double_cover_agrees_across_searchers() {
    let inst = instance(3, 2, CandidateKind::ProperBox, 2);
    assert_eq!(inst.candidates.len(), 36);
    let exact = solve_cover(&inst, &SearchBudget::default());
    assert_eq!((exact.best_size, exact.proven_optimal), (Some(6), true));
    let budget = SearchBudget { max_nodes: 500_000, seed: 5, stop_at: exact.best_size, ..Default::default() };
    assert_eq!(anneal_cover(&inst, &budget).best_size, Some(6));
}

#[test]
fn odd_boxes_of_five_cube_within_budget() {
    let inst = instance(5, 3, CandidateKind::OddProperBox, 1);
    let budget = SearchBudget { wall_seconds: 60, stop_at: Some(27), threads: 2, ..Default::default() };
    let r = anneal_cover(&inst, &budget);
    let fam = r.best.expect("a partition is found");
    assert!(fam.len() <= 27);
    let v = verify_cover(&fam, 1, CoverMode::Exact);
    assert!(v.is_partition && v.all_odd && v.all_proper);
}

#[test]
fn model_sizes() {
    let rows = |text: &str| text.lines().filter(|l| l.starts_with(" p_")).count();
    let vars = |text: &str| text.lines().skip_while(|l| *l != "Binary").nth(1).unwrap().split_whitespace().count();
    let a = export_model(&instance(3, 1, CandidateKind::OddProperBox, 1), ModelFormat::Lp).unwrap();
    assert_eq!((vars(&a), rows(&a)), (3, 3));
    let b = export_model(&instance(5, 3, CandidateKind::OddProperBox, 1), ModelFormat::Lp).unwrap();
    assert_eq!((vars(&b), rows(&b)), (3375, 125));
    let inst = instance(3, 3, CandidateKind::ProperBox, 2);
    let c = export_model(&inst, ModelFormat::Lp).unwrap();
    assert_eq!((vars(&c), rows(&c)), (216, 27));
    assert_eq!(parse_lp_model(&c).unwrap(), inst);
}

#[test]
fn cnf_clause_structure() {
    let text = export_model(&instance(3, 2, CandidateKind::ProperBrick, 1), ModelFormat::Cnf).unwrap();
    let header = text.lines().find(|l| l.starts_with("p cnf")).unwrap();
    let fields: Vec<usize> = header.split_whitespace().skip(2).map(|x| x.parse().unwrap()).collect();
    let clauses: Vec<&str> = text.lines().filter(|l| !l.starts_with('c') && !l.starts_with('p')).collect();
    assert_eq!(fields, vec![25, clauses.len()]);
    assert!(clauses.iter().all(|c| c.ends_with(" 0")));
    assert_eq!(clauses.iter().filter(|c| !c.starts_with('-')).count(), 9);
}

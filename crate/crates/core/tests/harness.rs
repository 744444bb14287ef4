mod common;

use common::ratio;
use matchavg::graph6::{parse_graph6, write_graph6};
use matchavg::harness::{
    exit_code, render, search_weighted_counterexamples, verify, verify_complete_identities, verify_path_closed_form,
    verify_spiders, CorpusKind, Format, Partition, RunConfig, Settings, Theorem, VerdictReport, EXIT_PASS,
    EXIT_UNDECIDED, EXIT_VIOLATION,
};
use matchavg::{canonical_key, ExactRatio, Graph};

fn run(theorem: Theorem, kind: CorpusKind, ns: std::ops::RangeInclusive<usize>) -> VerdictReport {
    verify(theorem, Some(&vec![(kind, ns)]), None, &Settings::default()).unwrap()
}

fn g6(g: &Graph) -> String {
    write_graph6(g).unwrap()
}

fn same_class(text: &str, g: &Graph) -> bool {
    parse_graph6(text).is_ok_and(|h| canonical_key(&h) == canonical_key(g))
}

fn has_observation(r: &VerdictReport, needle: &str) -> bool {
    r.observations.iter().any(|o| o.detail.contains(needle))
}

#[test]
fn complete_max_witnesses() {
    let r = run(Theorem::CompleteMax, CorpusKind::Graphs, 2..=5);
    assert!(r.passed());
    let w = r.witnesses("max av n=4");
    assert_eq!(w.len(), 1);
    assert_eq!(w[0].graph6, g6(&Graph::complete(4)));
    assert_eq!(w[0].value, ExactRatio::new(6, 5));
    assert!(has_observation(&r, "9/8"));
}

#[test]
fn edgeless_min_and_edge_deletion() {
    let r = run(Theorem::EdgelessMin, CorpusKind::Graphs, 1..=6);
    assert!(r.passed());
    let w = r.witnesses("min av n=6");
    assert_eq!(w.len(), 1);
    assert_eq!(w[0].value, ExactRatio::zero());
    let r = run(Theorem::EdgeDeletion, CorpusKind::Graphs, 1..=6);
    assert!(r.passed(), "{:?}", r.violations);
    // the chair: deleting the pendant path edge raises av
    assert!(has_observation(&r, "rises after deleting"));
}

#[test]
fn star_and_path_extremes() {
    let r = run(Theorem::StarMin, CorpusKind::Trees, 2..=10);
    assert!(r.passed());
    assert_eq!(r.witnesses("min av n=5")[0].value, ExactRatio::new(4, 5));
    let r = run(Theorem::StarMin, CorpusKind::Connected, 3..=3);
    assert!(has_observation(&r, "av(K_3) = 3/4"));
    let r = run(Theorem::PathMax, CorpusKind::Trees, 2..=10);
    assert!(r.passed(), "{:?}", r.violations);
    let w = r.witnesses("max av n=5");
    assert_eq!(w.len(), 1);
    assert!(same_class(&w[0].graph6, &Graph::path(5)));
    assert_eq!(w[0].value, ExactRatio::new(5, 4));
    let tight: Vec<_> = r.observations.iter().filter(|o| o.detail.contains("equals a·n + b")).collect();
    assert_eq!(tight.len(), 1);
    assert!(same_class(&tight[0].graph6, &Graph::spider(3)));
    assert!(tight[0].detail.contains("9/5"));
}

#[test]
fn quotient_lemma_is_tight_at_star_centers() {
    let r = run(Theorem::QuotientLemma, CorpusKind::Trees, 1..=9);
    assert!(r.passed());
    assert!(r.observations.iter().any(|o| same_class(&o.graph6, &Graph::star(6))));
}

#[test]
fn weighted_sandwich_small() {
    let settings = Settings { alphas: vec![ratio(1, 4), ratio(1, 2), ratio(1, 1)], ..Settings::default() };
    let r = verify(
        Theorem::WeightedSandwich,
        Some(&vec![(CorpusKind::Trees, 1..=8), (CorpusKind::Graphs, 1..=5)]),
        None,
        &settings,
    )
    .unwrap();
    assert!(r.passed(), "{:?}", r.violations);
    let lo = r.witnesses("min av^1/2 n=6");
    assert_eq!(lo.len(), 1);
    assert!(same_class(&lo[0].graph6, &Graph::star(6)));
}

#[test]
fn weighted_search_finds_large_alpha_counterexamples() {
    let r = search_weighted_counterexamples(2..=10, &[ratio(4, 1)], &Settings::default()).unwrap();
    assert!(r.passed());
    assert!(!r.observations.is_empty());
}

#[test]
fn closed_form_and_identities() {
    let r = verify_path_closed_form(60);
    assert!(r.passed(), "{:?}", r.violations);
    assert!(has_observation(&r, "exactly"));
    let r = verify_complete_identities(30);
    assert!(r.passed(), "{:?}", r.violations);
    assert!(has_observation(&r, "ties with n = 2"));
    let r = verify_spiders(1..=10, &Settings::default());
    assert!(r.passed());
    assert_eq!(r.corpus_size, 10);
}

#[test]
fn shards_merge_to_the_whole() {
    let whole = run(Theorem::StarMin, CorpusKind::Trees, 2..=11);
    let shards: Vec<VerdictReport> = (0..3)
        .map(|id| {
            let settings = Settings { partition: Partition { workers: 3, worker_id: Some(id) }, ..Settings::default() };
            verify(Theorem::StarMin, Some(&vec![(CorpusKind::Trees, 2..=11)]), None, &settings).unwrap()
        })
        .collect();
    let forward = shards.iter().cloned().reduce(VerdictReport::merge).unwrap();
    let backward = shards.iter().rev().cloned().reduce(VerdictReport::merge).unwrap();
    for merged in [forward, backward] {
        assert_eq!(merged.corpus_size, whole.corpus_size);
        assert_eq!(merged.extremal_witnesses, whole.extremal_witnesses);
        assert_eq!(merged.observations, whole.observations);
        assert_eq!(merged.violations, whole.violations);
    }
}

#[test]
fn threaded_sweep_matches_single_thread() {
    let single = run(Theorem::EdgeDeletion, CorpusKind::Graphs, 1..=6);
    let settings = Settings { partition: Partition { workers: 4, worker_id: None }, ..Settings::default() };
    let threaded = verify(Theorem::EdgeDeletion, Some(&vec![(CorpusKind::Graphs, 1..=6)]), None, &settings).unwrap();
    assert_eq!(single.extremal_witnesses, threaded.extremal_witnesses);
    assert_eq!(single.observations, threaded.observations);
    assert_eq!(single.corpus_size, threaded.corpus_size);
}

#[test]
fn exit_codes_and_rendering() {
    let mut ok = VerdictReport::new("x", "c".into());
    assert_eq!(exit_code(std::slice::from_ref(&ok)), EXIT_PASS);
    let mut undecided = ok.clone();
    undecided.undecided.push(matchavg::harness::Violation { graph6: "A_".into(), detail: "d".into() });
    assert_eq!(exit_code(&[ok.clone(), undecided.clone()]), EXIT_UNDECIDED);
    ok.violation("A_", "bad");
    assert_eq!(exit_code(&[ok.clone(), undecided]), EXIT_VIOLATION);
    let json: serde_json::Value = serde_json::from_str(&render(&[ok.clone()], Format::Json)).unwrap();
    assert_eq!(json[0]["theorem_id"], "x");
    assert_eq!(json[0]["violations"][0]["graph6"], "A_");
    let csv = render(&[ok], Format::Csv);
    assert!(csv.lines().nth(1).unwrap().ends_with(",fail"));
}

#[test]
fn run_config_validation() {
    let mut c = RunConfig { theorems: vec![Theorem::SpectralIdentities], n_range: Some(1..=9), ..RunConfig::default() };
    assert!(c.validate().is_err());
    c.n_range = Some(1..=5);
    assert!(c.validate().is_ok());
    c.tolerance = Some(-1.0);
    assert!(c.validate().is_err());
    c.tolerance = None;
    c.workers = 0;
    assert!(c.validate().is_err());
    let c = RunConfig { theorems: vec![Theorem::PathMax], corpus: Some(CorpusKind::Graphs), ..RunConfig::default() };
    assert!(c.validate().is_err());
}

#[test]
fn reports_are_deterministic() {
    let a = run(Theorem::CountBounds, CorpusKind::Graphs, 1..=5);
    let b = run(Theorem::CountBounds, CorpusKind::Graphs, 1..=5);
    assert_eq!(a.observations, b.observations);
    assert_eq!(a.extremal_witnesses, b.extremal_witnesses);
    assert!(a.observations.iter().any(|o| o.detail == "equality in log bound"));
}

//! Worked scenarios that cross module boundaries.

use scimm::codec::{dominates, dominates_bruteforce, interval_isomorphism};
use scimm::digraph::{SemiCompleteDigraph, SimpleDigraph};
use scimm::error::Error;
use scimm::generate::{gen_random_bounded_ctw, insert_forward_runs};
use scimm::immersion::{
    find_immersion_bruteforce, immerse_via_codewords, verify_strong_immersion, wqo_scan,
    EncodedDigraph,
};
use scimm::linked::{build_linked_ordered_cuts, check_linked_ordered_cuts, check_linked_ordering};
use scimm::ordering::{cut_sequence, OrderedCutSequence, VertexOrdering};

fn three_cycle() -> SemiCompleteDigraph {
    SemiCompleteDigraph::new(SimpleDigraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap()).unwrap()
}

fn pad(e: &EncodedDigraph, runs: &[(usize, usize)]) -> SemiCompleteDigraph {
    let (d, _) = insert_forward_runs(&e.digraph, &e.layout.ordering, runs).unwrap();
    SemiCompleteDigraph::new(d).unwrap()
}

#[test]
fn three_cycle_into_four_vertex_host() {
    let s = three_cycle();
    let hosts: Vec<SemiCompleteDigraph> = (0..200)
        .map(|seed| gen_random_bounded_ctw(4, 1, seed))
        .filter(|h| immerse_via_codewords(&s, h, 1).unwrap().is_some())
        .collect();
    assert!(!hosts.is_empty());
    for h in &hosts {
        let out = immerse_via_codewords(&s, h, 1).unwrap().unwrap();
        assert_eq!(out.embedding.f, vec![1, 2, 3]);
        assert_eq!(verify_strong_immersion(&s, h, &out.model), Ok(()));
        assert!(find_immersion_bruteforce(&s, h).unwrap().is_some());
    }
}

#[test]
fn three_cycle_shifted_inside_two_hosts() {
    let cycle = EncodedDigraph::new(three_cycle(), 1).unwrap();
    // five forward vertices before the cycle keep the tags aligned
    let left = EncodedDigraph::new(pad(&cycle, &[(0, 5), (3, 2)]), 1).unwrap();
    let right = EncodedDigraph::new(pad(&cycle, &[(0, 5), (3, 7)]), 1).unwrap();
    for host in [&left, &right] {
        let f = dominates(&cycle.codeword, &host.codeword).unwrap().unwrap();
        assert_eq!(f.f, vec![6, 7, 8]);
        let pairs = interval_isomorphism(
            &cycle.digraph,
            &cycle.layout.ordering,
            &host.digraph,
            &host.layout.ordering,
            1,
            3,
            &f,
        )
        .unwrap();
        assert_eq!(pairs.len(), 3);
        for (k, &(u, v)) in pairs.iter().enumerate() {
            assert_eq!(u, cycle.layout.ordering.vertex_at(k + 1));
            assert_eq!(v, host.layout.ordering.vertex_at(k + 6));
        }
    }
}

#[test]
fn alternating_cycles_are_out_of_the_scanner_domain() {
    let c4 = scimm::generate::gen_alternating_cycle(2).unwrap();
    assert!(matches!(SemiCompleteDigraph::new(c4), Err(Error::NotSemiComplete(_, _))));
}

#[test]
fn ordered_cuts_must_respect_crossing_paths() {
    let d = SimpleDigraph::from_arcs(8, [(4, 0), (5, 1), (2, 5), (3, 4), (6, 2), (7, 3)]).unwrap();
    let pi = VertexOrdering::identity(8);
    assert!(check_linked_ordering(&d, &pi).linked);
    let lex = OrderedCutSequence::lexicographic(&cut_sequence(&d, &pi));
    let report = check_linked_ordered_cuts(&d, &pi, &lex);
    assert!(!report.linked);
    assert!(report.failing_pair.is_some());
    let sigma = build_linked_ordered_cuts(&d, &pi).unwrap();
    assert!(check_linked_ordered_cuts(&d, &pi, &sigma).linked);
}

#[test]
fn codeword_test_is_incomplete() {
    // a small width-one pair that immerses although its codewords do not dominate
    let found = (0..400u64).find_map(|seed| {
        let s = gen_random_bounded_ctw(2 + (seed % 3) as usize, 1, seed);
        let s2 = gen_random_bounded_ctw(3 + (seed % 5) as usize, 1, seed + 10_000);
        let a = EncodedDigraph::new(s.clone(), 1).unwrap();
        let b = EncodedDigraph::new(s2.clone(), 1).unwrap();
        let absent = dominates(&a.codeword, &b.codeword).unwrap().is_none();
        (absent && find_immersion_bruteforce(&s, &s2).unwrap().is_some()).then_some((s, s2))
    });
    let (s, s2) = found.expect("an immersion missed by the codeword test");
    assert_eq!(immerse_via_codewords(&s, &s2, 1).unwrap(), None);
}

#[test]
fn scanner_returns_the_planted_pair() {
    let mut checked = 0;
    for seed in 0..60u64 {
        let a = EncodedDigraph::new(gen_random_bounded_ctw(3, 1, seed), 1).unwrap();
        let other = gen_random_bounded_ctw(5, 1, seed + 500);
        let o = EncodedDigraph::new(other.clone(), 1).unwrap();
        if dominates(&a.codeword, &o.codeword).unwrap().is_some() {
            continue;
        }
        let b = EncodedDigraph::new(pad(&a, &[(3, 5)]), 1).unwrap();
        if dominates(&o.codeword, &b.codeword).unwrap().is_some() {
            continue;
        }
        assert!(dominates_bruteforce(&a.codeword, &b.codeword).unwrap().is_some());
        let seq = vec![a.digraph.clone(), other, b.digraph.clone()];
        let hit = wqo_scan(&seq, 1).unwrap().unwrap();
        assert_eq!((hit.i, hit.j), (0, 2));
        assert_eq!(verify_strong_immersion(&seq[0], &seq[2], &hit.outcome.model), Ok(()));
        checked += 1;
    }
    assert!(checked >= 10, "only {checked} planted sequences");
}

#[test]
fn scanner_reports_nothing_for_an_antichain_prefix() {
    let seq = vec![three_cycle()];
    assert_eq!(wqo_scan(&seq, 1).unwrap(), None);
    assert_eq!(wqo_scan(&[], 1).unwrap(), None);
}

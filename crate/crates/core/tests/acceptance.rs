//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit status
//! if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scimm::codec::{
    check_embedding, dominates, dominates_bruteforce, encode, interval_isomorphism, Codeword,
    Label, ProfileClass,
};
use scimm::cutwidth::{cutwidth_bruteforce, cutwidth_exact};
use scimm::digraph::{SemiCompleteDigraph, SimpleDigraph};
use scimm::generate::{
    gen_alternating_cycle, gen_permutation, gen_random_bounded_ctw, gen_random_digraph,
    gen_random_semicomplete, gen_random_tournament, insert_forward_runs,
};
use scimm::immersion::{
    encode_all, find_immersion_bruteforce_with, immerse_encoded, immerse_via_codewords,
    verify_strong_immersion, wqo_scan, BruteForceLimits, EncodedDigraph, F2Record, Layout,
};
use scimm::linked::{
    build_linked_ordered_cuts, build_linked_ordering, check_linked_ordered_cuts,
    check_linked_ordering,
};
use scimm::ordering::{cut_sequence, OrderedCutSequence, VertexOrdering};

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(id: usize, title: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let in_time = took <= budget;
    let pass = out.pass && in_time;
    println!(
        "criterion {id} [{}] {title}: {} ({:.2}s of {}s)",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        took.as_secs_f64(),
        budget.as_secs()
    );
    pass
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Criterion 1: the alternating cycles C4, C6, C8 pairwise do not immerse.
fn antichain() -> Outcome {
    let cycles: Vec<SimpleDigraph> = (2..=4).map(|k| gen_alternating_cycle(k).unwrap()).collect();
    let limits = BruteForceLimits {
        max_pattern: 8,
        max_host: 8,
    };
    let mut found = Vec::new();
    let mut checked = 0;
    for (a, h) in cycles.iter().enumerate() {
        for (b, d) in cycles.iter().enumerate() {
            if a != b {
                checked += 1;
                if find_immersion_bruteforce_with(h, d, limits).unwrap().is_some() {
                    found.push((2 * a + 4, 2 * b + 4));
                }
            }
        }
    }
    Outcome {
        pass: found.is_empty(),
        detail: format!("{checked} ordered pairs checked, immersions found: {found:?}"),
    }
}

/// Criterion 2: exact cutwidth agrees with brute force.
fn cutwidth_oracle() -> Outcome {
    let mut r = rng(2);
    let mut mismatches = Vec::new();
    let total = 240;
    for k in 0..total {
        let n = r.gen_range(1..=8);
        let seed = r.gen();
        let d = match k % 4 {
            0 => gen_random_tournament(n, seed).into_inner(),
            1 => gen_random_semicomplete(n, 0.3, seed).unwrap().into_inner(),
            2 => gen_random_bounded_ctw(n, r.gen_range(0..=3), seed).into_inner(),
            _ => gen_random_digraph(n, 0.35, seed).unwrap(),
        };
        let exact = cutwidth_exact(&d).unwrap();
        let brute = cutwidth_bruteforce(&d).unwrap();
        let achieved = cut_sequence(&d, &exact.ordering).width();
        if exact.ctw != brute || achieved != exact.ctw {
            mismatches.push((k, exact.ctw, brute));
        }
    }
    Outcome {
        pass: mismatches.is_empty(),
        detail: format!("{total} digraphs, mismatches: {mismatches:?}"),
    }
}

/// Criterion 3: built orderings and ordered cuts are linked.
fn linkedness() -> Outcome {
    let mut r = rng(3);
    let total = 120;
    let mut failures = Vec::new();
    for k in 0..total {
        let n = r.gen_range(1..=10);
        let c = r.gen_range(0..=4);
        let s = gen_random_bounded_ctw(n, c, r.gen());
        let pi = build_linked_ordering(&s, 22).unwrap();
        let report = check_linked_ordering(&s, &pi);
        let sigma = build_linked_ordered_cuts(&s, &pi).unwrap();
        let cuts_report = check_linked_ordered_cuts(&s, &pi, &sigma);
        if !report.linked || !cuts_report.linked || cut_sequence(&s, &pi).width() > c {
            failures.push((k, report.failing_pair, cuts_report.failing_pair));
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!("{total} digraphs (n <= 10, ctw <= 4), failures: {failures:?}"),
    }
}

/// A random label from a small pool so that equal labels are common.
fn random_label(r: &mut ChaCha8Rng, c: usize, pool: usize) -> Label {
    let kind = r.gen_range(0..pool);
    let s1 = kind % (c + 1);
    let s2 = (kind / (c + 1)) % (c + 1);
    let matched = s1.min(s2).min(kind % 2);
    let matches: Vec<(usize, usize)> = (1..=matched).map(|p| (p, p)).collect();
    Label {
        profile: ProfileClass { s1, s2, matches },
        sym_prev: vec![false; s1],
        sym_next: vec![false; s2],
        tag: r.gen_range(0..=(4 * c).min(1)),
    }
}

fn random_codeword(r: &mut ChaCha8Rng, n: usize, c: usize, pool: usize) -> Codeword {
    Codeword {
        n,
        labels: (0..n).map(|_| random_label(r, c, pool)).collect(),
        zeta: (1..n).map(|_| r.gen_range(0..=c)).collect(),
        c,
    }
}

/// Criterion 4: the domination program agrees with brute force.
fn domination_oracle() -> Outcome {
    let mut r = rng(4);
    let total = 600;
    let mut mismatches = Vec::new();
    let mut present = 0;
    for k in 0..total {
        let c = r.gen_range(0..=3);
        let n = r.gen_range(1..=6);
        let n2 = r.gen_range(1..=12);
        let pool = r.gen_range(1..=4);
        let a = random_codeword(&mut r, n, c, pool);
        let b = if k % 3 == 0 && n2 >= n {
            // plant: copy a's letters into b at random increasing positions
            let mut b = random_codeword(&mut r, n2, c, pool);
            let mut slots: Vec<usize> = (0..n2).collect();
            slots.sort_by_key(|_| r.gen::<u32>());
            let mut slots = slots[..n].to_vec();
            slots.sort_unstable();
            for (j, &i) in slots.iter().enumerate() {
                b.labels[i] = a.labels[j].clone();
            }
            b
        } else {
            random_codeword(&mut r, n2, c, pool)
        };
        let fast = dominates(&a, &b).unwrap();
        let slow = dominates_bruteforce(&a, &b).unwrap();
        let valid = fast.as_ref().is_none_or(|f| check_embedding(&a, &b, f));
        if fast.is_some() != slow.is_some() || !valid || fast != slow {
            mismatches.push(k);
        }
        present += usize::from(slow.is_some());
    }
    Outcome {
        pass: mismatches.is_empty(),
        detail: format!(
            "{total} pairs, {present} with domination, mismatches: {mismatches:?}"
        ),
    }
}

/// Pads `s` with runs of forward vertices, each of length a multiple of
/// `4c + 1`, inserted into its own layout.
fn plant_host(s: &EncodedDigraph, c: usize, runs: usize, max_n: usize, r: &mut ChaCha8Rng) -> Option<SemiCompleteDigraph> {
    let block = 4 * c + 1;
    let n = s.digraph.n();
    let pi = &s.layout.ordering;
    // insertion points strictly inside the span of a symmetric pair
    let inside: Vec<usize> = s
        .digraph
        .symmetric_pairs()
        .into_iter()
        .flat_map(|(u, v)| {
            let (p, q) = (pi.position(u).min(pi.position(v)), pi.position(u).max(pi.position(v)));
            p + 1..=q
        })
        .collect();
    let mut list = Vec::new();
    let mut total = n;
    for _ in 0..runs {
        if total + block > max_n {
            break;
        }
        let p = if !inside.is_empty() && r.gen_bool(0.75) {
            inside[r.gen_range(0..inside.len())]
        } else {
            r.gen_range(0..=n)
        };
        list.push((p, block));
        total += block;
    }
    if list.is_empty() {
        return None;
    }
    let (d, _) = insert_forward_runs(&s.digraph, &s.layout.ordering, &list).unwrap();
    Some(SemiCompleteDigraph::new(d).unwrap())
}

#[derive(Default)]
struct PipelineStats {
    pairs: usize,
    successes: usize,
    verified: usize,
    oracle_checked: usize,
    oracle_confirmed: usize,
    f2_records: Vec<(usize, F2Record)>,
    errors: Vec<String>,
}

/// Criteria 5 and 6 share these runs.
fn pipeline_runs() -> PipelineStats {
    let mut r = rng(5);
    let mut st = PipelineStats::default();
    let limits = BruteForceLimits {
        max_pattern: 5,
        max_host: 9,
    };
    while st.pairs < 300 {
        let kind = st.pairs % 5;
        let c_gen = r.gen_range(1..=2);
        let (s, s2) = match kind {
            // independent random pair
            0 => (
                gen_random_bounded_ctw(r.gen_range(2..=6), c_gen, r.gen()),
                gen_random_bounded_ctw(r.gen_range(4..=12), c_gen, r.gen()),
            ),
            // a relabelled copy
            1 => {
                let s = gen_random_bounded_ctw(r.gen_range(2..=9), c_gen, r.gen());
                let perm = gen_permutation(s.n(), r.gen());
                let s2 = s.relabel(&perm);
                (s, s2)
            }
            // planted padding, small enough for the oracle
            2 | 3 => {
                let c = if kind == 2 { 1 } else { 2 };
                let max_n = if kind == 2 { 9 } else { 12 };
                let n = r.gen_range(2..=if kind == 2 { 4 } else { 3 });
                let s = gen_random_bounded_ctw(n, c, r.gen());
                let enc = EncodedDigraph::new(s.clone(), c).unwrap();
                match plant_host(&enc, c, 2, max_n, &mut r) {
                    Some(h) => (s, h),
                    None => continue,
                }
            }
            // larger planted padding, beyond the oracle
            4 => {
                let c = r.gen_range(1..=2);
                let s = gen_random_bounded_ctw(r.gen_range(3..=7), c, r.gen());
                let enc = EncodedDigraph::new(s.clone(), c).unwrap();
                match plant_host(&enc, c, 3, 22, &mut r) {
                    Some(h) => (s, h),
                    None => continue,
                }
            }
            _ => unreachable!(),
        };
        st.pairs += 1;
        let c = cutwidth_exact(&s).unwrap().ctw.max(cutwidth_exact(&s2).unwrap().ctw);
        let out = match immerse_via_codewords(&s, &s2, c) {
            Ok(o) => o,
            Err(e) => {
                st.errors.push(e.to_string());
                continue;
            }
        };
        let Some(out) = out else { continue };
        st.successes += 1;
        if verify_strong_immersion(&s, &s2, &out.model).is_ok() {
            st.verified += 1;
        }
        for rec in out.trace.f2 {
            st.f2_records.push((out.c, rec));
        }
        if s.n() <= 5 && s2.n() <= 9 {
            st.oracle_checked += 1;
            if matches!(find_immersion_bruteforce_with(&s, &s2, limits), Ok(Some(_))) {
                st.oracle_confirmed += 1;
            }
        }
    }
    st
}

/// Criterion 7: digraphs with identical codewords immerse via the identity.
fn equal_codewords() -> Outcome {
    let mut r = rng(7);
    let mut pairs = 0;
    let mut ok = 0;
    let mut attempts = 0;
    while pairs < 60 && attempts < 2000 {
        attempts += 1;
        let c = r.gen_range(0..=2);
        let s = gen_random_bounded_ctw(r.gen_range(1..=9), c, r.gen());
        let s2 = if pairs % 2 == 0 {
            s.clone()
        } else {
            s.relabel(&gen_permutation(s.n(), r.gen()))
        };
        let a = EncodedDigraph::new(s.clone(), c).unwrap();
        let b = EncodedDigraph::new(s2.clone(), c).unwrap();
        if a.codeword != b.codeword {
            continue;
        }
        pairs += 1;
        if let Ok(Some(out)) = immerse_encoded(&a, &b) {
            let identity = out.embedding.f == (1..=s.n()).collect::<Vec<_>>();
            if identity && verify_strong_immersion(&s, &s2, &out.model).is_ok() {
                ok += 1;
            }
        }
    }
    Outcome {
        pass: pairs >= 50 && ok == pairs,
        detail: format!("{ok}/{pairs} equal-codeword pairs immersed via the identity"),
    }
}

/// Ordered cuts of a padded layout: runs copy the numbering at their
/// insertion point.
fn padded_cuts(
    s: &SimpleDigraph,
    pi: &VertexOrdering,
    sigma: &OrderedCutSequence,
    s2: &SimpleDigraph,
    pi2: &VertexOrdering,
) -> OrderedCutSequence {
    let n = pi.len();
    let mut cuts = vec![Vec::new()];
    let mut p = 0;
    for i in 1..=pi2.len() {
        if pi2.vertex_at(i) < n {
            p += 1;
        }
        cuts.push(sigma.cuts[p].clone());
    }
    let out = OrderedCutSequence { cuts };
    out.validate(&cut_sequence(s2, pi2)).expect("padded cuts are consistent");
    debug_assert_eq!(cut_sequence(s, pi).n(), n);
    out
}

/// Criterion 8: labels that agree along a run of consecutive positions
/// certify an isomorphism of the two intervals.
fn interval_isomorphisms() -> Outcome {
    let mut r = rng(8);
    let mut pairs = 0;
    let mut intervals = 0;
    let mut failures = Vec::new();
    while pairs < 120 {
        let c = r.gen_range(1..=2);
        let n = r.gen_range(3..=8);
        let s = gen_random_bounded_ctw(n, c, r.gen());
        let layout = Layout::build(&s).unwrap();
        let (pi, sigma) = (&layout.ordering, &layout.ordered_cuts);
        let block = 4 * c + 1;
        let runs: Vec<(usize, usize)> =
            (0..r.gen_range(1..=2)).map(|_| (r.gen_range(0..=n), block)).collect();
        let (d2, pi2) = insert_forward_runs(&s, pi, &runs).unwrap();
        let s2 = SemiCompleteDigraph::new(d2).unwrap();
        let sigma2 = padded_cuts(&s, pi, sigma, &s2, &pi2);
        let cw = encode(&s, pi, sigma, c).unwrap();
        let cw2 = encode(&s2, &pi2, &sigma2, c).unwrap();
        let f = scimm::codec::Embedding {
            f: (1..=pi2.len()).filter(|&i| pi2.vertex_at(i) < n).collect(),
        };
        if !check_embedding(&cw, &cw2, &f) {
            failures.push(format!("pair {pairs}: planted embedding rejected"));
            pairs += 1;
            continue;
        }
        pairs += 1;
        // every maximal run of consecutive images
        let mut j = 1;
        while j <= n {
            let mut h = j;
            while h < n && f.at(h + 1) == f.at(h) + 1 {
                h += 1;
            }
            let labels_match = (j..=h).all(|x| cw.label(x) == cw2.label(f.at(x)));
            if labels_match {
                intervals += 1;
                match interval_isomorphism(&s, pi, &s2, &pi2, j, h, &f) {
                    Ok(pairs_) if pairs_.len() == h - j + 1 => {}
                    other => failures.push(format!("pair {pairs} [{j},{h}]: {other:?}")),
                }
            }
            j = h + 1;
        }
    }
    Outcome {
        pass: pairs >= 100 && failures.is_empty(),
        detail: format!("{pairs} planted pairs, {intervals} intervals verified, failures: {failures:?}"),
    }
}

/// Criterion 9: the scanner agrees with a plain all-pairs domination scan.
fn scanner() -> Outcome {
    let mut r = rng(9);
    let mut mismatches = Vec::new();
    let mut hits = 0;
    let c = 1;
    for stream in 0..20 {
        let mut seq: Vec<SemiCompleteDigraph> = (0..10)
            .map(|_| gen_random_bounded_ctw(r.gen_range(2..=7), c, r.gen()))
            .collect();
        if stream % 4 == 0 {
            let (i, j) = (r.gen_range(0..5), r.gen_range(5..10));
            seq[j] = seq[i].clone();
        }
        let scanned = wqo_scan(&seq, c).unwrap();
        let encoded = encode_all(&seq, c).unwrap();
        let mut reference = None;
        'outer: for i in 0..encoded.len() {
            for j in i + 1..encoded.len() {
                if let Some(f) = dominates(&encoded[i].codeword, &encoded[j].codeword).unwrap() {
                    reference = Some((i, j, f));
                    break 'outer;
                }
            }
        }
        let got = scanned.map(|h| (h.i, h.j, h.outcome.embedding));
        if got.is_some() {
            hits += 1;
        }
        if got != reference {
            mismatches.push(stream);
        }
    }
    Outcome {
        pass: mismatches.is_empty(),
        detail: format!("20 streams of 10, {hits} with a pair, mismatches: {mismatches:?}"),
    }
}

fn main() -> ExitCode {
    let mut all = true;
    all &= run(1, "alternating-cycle antichain", Duration::from_secs(60), antichain);
    all &= run(2, "cutwidth oracle equivalence", Duration::from_secs(120), cutwidth_oracle);
    all &= run(3, "linked layouts", Duration::from_secs(300), linkedness);
    all &= run(4, "domination oracle equivalence", Duration::from_secs(60), domination_oracle);

    let mut stats = PipelineStats::default();
    all &= run(5, "pipeline soundness", Duration::from_secs(600), || {
        stats = pipeline_runs();
        let st = &stats;
        Outcome {
            pass: st.pairs >= 300
                && st.errors.is_empty()
                && st.verified == st.successes
                && st.oracle_confirmed == st.oracle_checked,
            detail: format!(
                "{} pairs, {} successes, {} verified, oracle {}/{}, errors: {:?}",
                st.pairs,
                st.successes,
                st.verified,
                st.oracle_confirmed,
                st.oracle_checked,
                st.errors
            ),
        }
    });
    let st = stats;
    all &= run(6, "pivot arithmetic", Duration::from_secs(60), || {
        let bad: Vec<String> = st
            .f2_records
            .iter()
            .filter_map(|(c, rec)| rec.check(*c).err())
            .collect();
        Outcome {
            pass: bad.is_empty() && !st.f2_records.is_empty(),
            detail: format!("{} pivot-routed arcs checked, violations: {bad:?}", st.f2_records.len()),
        }
    });
    all &= run(7, "equal-codeword immersion", Duration::from_secs(60), equal_codewords);
    all &= run(8, "interval isomorphism", Duration::from_secs(60), interval_isomorphisms);
    all &= run(9, "scanner consistency", Duration::from_secs(120), scanner);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

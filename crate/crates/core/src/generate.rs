//! Seeded instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{SemiCompleteDigraph, SimpleDigraph};
use crate::error::{Error, Result};
use crate::ordering::VertexOrdering;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// The alternating cycle `C_{2k}`: vertex `i` is joined to `(i + 1) mod 2k`,
/// by the arc `i -> i+1` when `i` is even and `i+1 -> i` when `i` is odd.
/// Every vertex is a source or a sink.
pub fn gen_alternating_cycle(k: usize) -> Result<SimpleDigraph> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "alternating cycles need k >= 2, got {k}"
        )));
    }
    let n = 2 * k;
    let arcs = (0..n).map(|i| {
        let j = (i + 1) % n;
        if i % 2 == 0 {
            (i, j)
        } else {
            (j, i)
        }
    });
    SimpleDigraph::from_arcs(n, arcs)
}

/// A uniformly random tournament on `n` vertices.
pub fn gen_random_tournament(n: usize, seed: u64) -> SemiCompleteDigraph {
    let mut r = rng(seed);
    let mut d = SimpleDigraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(0.5) {
                d.add_arc(u, v);
            } else {
                d.add_arc(v, u);
            }
        }
    }
    SemiCompleteDigraph::new(d).expect("every pair received an arc")
}

/// A random semi-complete digraph: each pair is symmetric with probability
/// `p_sym`, and otherwise gets one arc of uniformly random direction.
pub fn gen_random_semicomplete(n: usize, p_sym: f64, seed: u64) -> Result<SemiCompleteDigraph> {
    if !(0.0..=1.0).contains(&p_sym) {
        return Err(Error::InvalidArgument(format!(
            "symmetric-pair probability {p_sym} is not in [0, 1]"
        )));
    }
    let mut r = rng(seed);
    let mut d = SimpleDigraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p_sym) {
                d.add_arc(u, v);
                d.add_arc(v, u);
            } else if r.gen_bool(0.5) {
                d.add_arc(u, v);
            } else {
                d.add_arc(v, u);
            }
        }
    }
    Ok(SemiCompleteDigraph::new(d).expect("every pair received an arc"))
}

/// A random semi-complete digraph of cutwidth at most `c`.
///
/// Starts from the transitive tournament on `0..n` and visits the pairs in
/// random order. A pair may be reversed or made symmetric as long as every
/// cut of the identity ordering stays at most `c`. The result
/// is relabelled by a random permutation.
pub fn gen_random_bounded_ctw(n: usize, c: usize, seed: u64) -> SemiCompleteDigraph {
    let mut r = rng(seed);
    let mut d = SimpleDigraph::empty(n);
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            d.add_arc(u, v);
            pairs.push((u, v));
        }
    }
    pairs.shuffle(&mut r);
    // cut[i] = number of backward arcs (v, u), u < v, with u < i <= v
    let mut cut = vec![0usize; n + 1];
    for (u, v) in pairs {
        let action = r.gen_range(0..3);
        if action == 0 || (u + 1..=v).any(|i| cut[i] + 1 > c) {
            continue;
        }
        for x in &mut cut[u + 1..=v] {
            *x += 1;
        }
        d.add_arc(v, u);
        if action == 1 {
            d.remove_arc(u, v);
        }
    }
    let perm = random_permutation(n, &mut r);
    SemiCompleteDigraph::new(d.relabel(&perm)).expect("every pair keeps an arc")
}

/// A random simple digraph where each ordered pair is an arc with
/// probability `p`.
pub fn gen_random_digraph(n: usize, p: f64, seed: u64) -> Result<SimpleDigraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "arc probability {p} is not in [0, 1]"
        )));
    }
    let mut r = rng(seed);
    let mut d = SimpleDigraph::empty(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && r.gen_bool(p) {
                d.add_arc(u, v);
            }
        }
    }
    Ok(d)
}

/// A uniformly random permutation of `0..n`.
pub fn gen_permutation(n: usize, seed: u64) -> Vec<usize> {
    random_permutation(n, &mut rng(seed))
}

/// Inserts runs of new vertices into a layout. Each `(p, len)` places `len`
/// new vertices right after position `p` of `pi` (`p = 0` means before the
/// first vertex). A new vertex receives an arc from every vertex before it
/// and sends one to every vertex after it, so every cut inside a run equals
/// the cut of `pi` at `p`. Old vertices keep their ids; new ones are
/// numbered from `d.n()` in order of position.
pub fn insert_forward_runs(
    d: &SimpleDigraph,
    pi: &VertexOrdering,
    runs: &[(usize, usize)],
) -> Result<(SimpleDigraph, VertexOrdering)> {
    let n = d.n();
    if pi.len() != n {
        return Err(Error::InvalidArgument("ordering does not match the digraph".into()));
    }
    if let Some(&(p, _)) = runs.iter().find(|&&(p, _)| p > n) {
        return Err(Error::InvalidArgument(format!("no position {p} in a layout of {n}")));
    }
    let mut extra = vec![0usize; n + 1];
    for &(p, len) in runs {
        extra[p] += len;
    }
    let mut order = Vec::new();
    let mut next = n;
    for (p, &k) in extra.iter().enumerate() {
        if p > 0 {
            order.push(pi.vertex_at(p));
        }
        for _ in 0..k {
            order.push(next);
            next += 1;
        }
    }
    let mut out = SimpleDigraph::empty(next);
    for (u, v) in d.arcs() {
        out.add_arc(u, v);
    }
    for (k, &x) in order.iter().enumerate() {
        if x < n {
            continue;
        }
        for &y in &order[..k] {
            out.add_arc(y, x);
        }
        for &y in &order[k + 1..] {
            out.add_arc(x, y);
        }
    }
    Ok((out, VertexOrdering::new(order)?))
}

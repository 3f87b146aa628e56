//! Exact cutwidth by dynamic programming over vertex subsets.
//!
//! For a prefix set `A` let `cut(A) = |E(V \ A, A)|`. The least width with
//! which the vertices outside `A` can be laid out after `A` satisfies
//! `rest(A) = min_{v not in A} max(cut(A + v), rest(A + v))` with
//! `rest(V) = 0`, and `ctw = rest(∅)`. Orderings are read off forwards,
//! always taking the lowest vertex index that keeps the optimum reachable, so
//! the result is the lexicographically smallest optimal ordering.

use std::ops::ControlFlow;

use crate::digraph::SimpleDigraph;
use crate::error::{Error, Result};
use crate::ordering::{ordering_width, VertexOrdering};

/// Default vertex limit for the subset dynamic program.
pub const DEFAULT_EXACT_LIMIT: usize = 22;
/// Hard ceiling on the subset dynamic program, whatever the caller asks for.
const MAX_EXACT_LIMIT: usize = 26;
/// Vertex limit for [`cutwidth_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 9;

/// Result of [`cutwidth_exact`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cutwidth {
    pub ctw: usize,
    pub ordering: VertexOrdering,
}

/// Per-subset cut sizes, shared by both dynamic programs.
struct SubsetCuts {
    n: usize,
    cut: Vec<u16>,
}

impl SubsetCuts {
    fn new(d: &SimpleDigraph, limit: usize) -> Result<Self> {
        let n = d.n();
        let limit = limit.min(MAX_EXACT_LIMIT);
        if n > limit {
            return Err(Error::LimitExceeded {
                what: "exact cutwidth",
                n,
                limit,
            });
        }
        let mut out_mask = vec![0u32; n];
        let mut in_mask = vec![0u32; n];
        for (u, v) in d.arcs() {
            out_mask[u] |= 1 << v;
            in_mask[v] |= 1 << u;
        }
        let size = 1usize << n;
        let mut cut = vec![0u16; size];
        for a in 1..size {
            let v = a.trailing_zeros() as usize;
            let rest = a & (a - 1);
            let lost = (out_mask[v] & rest as u32).count_ones();
            let gained = (in_mask[v] & !(a as u32)).count_ones();
            cut[a] = (cut[rest] as u32 + gained - lost) as u16;
        }
        Ok(SubsetCuts { n, cut })
    }

    fn full(&self) -> usize {
        (1usize << self.n) - 1
    }

    /// Pairs `(v, A + v)` for every vertex `v` outside `A`, lowest first.
    fn extensions(&self, a: usize) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (0..n).filter(move |v| a & (1 << v) == 0).map(move |v| (v, a | (1 << v)))
    }

    /// `rest[A]` as in the module docs.
    fn rest_widths(&self) -> Vec<u16> {
        let full = self.full();
        let mut rest = vec![0u16; full + 1];
        for a in (0..full).rev() {
            rest[a] = self
                .extensions(a)
                .map(|(_, b)| rest[b].max(self.cut[b]))
                .min()
                .expect("a proper subset has an extension");
        }
        rest
    }

    /// Builds the ordering forwards from the empty prefix, each time
    /// appending the lowest vertex `v` with `accept(A, A + v)`.
    fn reconstruct(&self, accept: impl Fn(usize, usize) -> bool) -> VertexOrdering {
        let mut order = Vec::with_capacity(self.n);
        let mut a = 0;
        while a != self.full() {
            let (v, b) = self
                .extensions(a)
                .find(|&(_, b)| accept(a, b))
                .expect("dynamic program table is consistent");
            order.push(v);
            a = b;
        }
        VertexOrdering::new(order).expect("reconstruction yields a permutation")
    }
}

/// Exact cutwidth with the default vertex limit.
pub fn cutwidth_exact(d: &SimpleDigraph) -> Result<Cutwidth> {
    cutwidth_exact_with_limit(d, DEFAULT_EXACT_LIMIT)
}

pub fn cutwidth_exact_with_limit(d: &SimpleDigraph, limit: usize) -> Result<Cutwidth> {
    let cuts = SubsetCuts::new(d, limit)?;
    let rest = cuts.rest_widths();
    let ctw = rest[0];
    let ordering = cuts.reconstruct(|_, b| cuts.cut[b].max(rest[b]) <= ctw);
    debug_assert_eq!(ordering_width(d, &ordering), ctw as usize);
    Ok(Cutwidth {
        ctw: ctw as usize,
        ordering,
    })
}

/// Among orderings of width `ctw(d)`, the lexicographically smallest one
/// minimizing the sum of all cut sizes. Such an ordering is linked; see
/// [`crate::linked`].
pub fn min_sum_optimal_ordering(d: &SimpleDigraph, limit: usize) -> Result<Cutwidth> {
    let cuts = SubsetCuts::new(d, limit)?;
    let w = cuts.rest_widths()[0];
    let full = cuts.full();
    // sum[A]: least total size of the cuts after prefix A, all at most w
    let mut sum = vec![u32::MAX; full + 1];
    sum[full] = 0;
    for a in (0..full).rev() {
        sum[a] = cuts
            .extensions(a)
            .filter(|&(_, b)| cuts.cut[b] <= w && sum[b] != u32::MAX)
            .map(|(_, b)| sum[b] + cuts.cut[b] as u32)
            .min()
            .unwrap_or(u32::MAX);
    }
    let ordering = cuts.reconstruct(|a, b| {
        cuts.cut[b] <= w && sum[b] != u32::MAX && sum[b] + cuts.cut[b] as u32 == sum[a]
    });
    debug_assert_eq!(ordering_width(d, &ordering), w as usize);
    Ok(Cutwidth {
        ctw: w as usize,
        ordering,
    })
}

/// Calls `visit` on orderings of width at most `w`, in lexicographic order of
/// vertex sequences, until it breaks.
pub fn for_each_ordering_within<B>(
    d: &SimpleDigraph,
    w: usize,
    mut visit: impl FnMut(&VertexOrdering) -> ControlFlow<B>,
) -> Option<B> {
    fn rec<B>(
        d: &SimpleDigraph,
        w: usize,
        prefix: &mut Vec<usize>,
        used: &mut [bool],
        cut: usize,
        visit: &mut impl FnMut(&VertexOrdering) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let n = d.n();
        if prefix.len() == n {
            let pi = VertexOrdering::new(prefix.clone()).expect("permutation");
            return visit(&pi);
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            let lost = d.out_neighbors(v).filter(|&x| used[x]).count();
            let gained = d.in_neighbors(v).filter(|&x| !used[x] && x != v).count();
            let next = cut + gained - lost;
            if next > w {
                continue;
            }
            used[v] = true;
            prefix.push(v);
            let r = rec(d, w, prefix, used, next, visit);
            prefix.pop();
            used[v] = false;
            r?;
        }
        ControlFlow::Continue(())
    }
    let mut used = vec![false; d.n()];
    match rec(d, w, &mut Vec::new(), &mut used, 0, &mut visit) {
        ControlFlow::Break(b) => Some(b),
        ControlFlow::Continue(()) => None,
    }
}

/// Minimum width over all `n!` orderings, each evaluated from scratch.
pub fn cutwidth_bruteforce(d: &SimpleDigraph) -> Result<usize> {
    let n = d.n();
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::LimitExceeded {
            what: "brute-force cutwidth",
            n,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = usize::MAX;
    permute(&mut perm, 0, &mut |p| {
        let pi = VertexOrdering::new(p.to_vec()).expect("permutation");
        best = best.min(ordering_width(d, &pi));
    });
    Ok(if n == 0 { 0 } else { best })
}

fn permute(items: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

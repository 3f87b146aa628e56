//! Linked vertex orderings and linked sequences of ordered cuts.
//!
//! A pair of cut indices `i < j` is *constrained* when `|E^i| = |E^j| = t > 0`
//! and no cut in between is smaller. An ordering is linked when every
//! constrained pair is joined by `t` arc-disjoint paths from the vertices
//! after `j` to the vertices up to `i`. An ordered-cut sequence is linked when
//! those paths can additionally be chosen so that path `s` enters through the
//! arc at position `s` of `ε^j` and leaves through the arc at position `s` of
//! `ε^i`.

use std::ops::ControlFlow;

use crate::cutwidth::{for_each_ordering_within, min_sum_optimal_ordering};
use crate::digraph::{Arc, SimpleDigraph};
use crate::error::{Error, Result};
use crate::flow::{
    cut_terminals, endpoint_matched_paths, max_arc_disjoint_paths, max_flow_value,
    SharedTerminals,
};
use crate::ordering::{cut_sequence, CutSequence, OrderedCutSequence, VertexOrdering};

/// Largest `n` for which [`build_linked_ordered_cuts`] falls back to
/// exhaustive search.
pub const ORDERED_CUTS_FALLBACK_LIMIT: usize = 8;

/// Outcome of a linkedness check; `failing_pair` is the first constrained
/// pair `(i, j)` without the required paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinkReport {
    pub linked: bool,
    pub failing_pair: Option<(usize, usize)>,
}

impl LinkReport {
    fn from_failure(failing_pair: Option<(usize, usize)>) -> Self {
        LinkReport {
            linked: failing_pair.is_none(),
            failing_pair,
        }
    }
}

pub fn check_linked_ordering(d: &SimpleDigraph, pi: &VertexOrdering) -> LinkReport {
    let cuts = cut_sequence(d, pi);
    let failing = cuts.constrained_pairs().into_iter().find(|&(i, j)| {
        let (sources, sinks) = cut_terminals(pi, i, j);
        let flow = max_flow_value(d, &sources, &sinks, SharedTerminals::Forbid)
            .expect("prefix and suffix are disjoint");
        flow < cuts.size(i)
    });
    LinkReport::from_failure(failing)
}

/// A width-optimal ordering that passes [`check_linked_ordering`].
///
/// The first candidate minimizes the sum of all cut sizes among
/// width-optimal orderings; if it is somehow not linked, width-optimal
/// orderings are enumerated until one is.
pub fn build_linked_ordering(d: &SimpleDigraph, limit: usize) -> Result<VertexOrdering> {
    let candidate = min_sum_optimal_ordering(d, limit)?;
    if check_linked_ordering(d, &candidate.ordering).linked {
        return Ok(candidate.ordering);
    }
    for_each_ordering_within(d, candidate.ctw, |pi| {
        if check_linked_ordering(d, pi).linked {
            ControlFlow::Break(pi.clone())
        } else {
            ControlFlow::Continue(())
        }
    })
    .ok_or_else(|| Error::Internal("no width-optimal ordering is linked".into()))
}

pub fn check_linked_ordered_cuts(
    d: &SimpleDigraph,
    pi: &VertexOrdering,
    sigma: &OrderedCutSequence,
) -> LinkReport {
    let cuts = cut_sequence(d, pi);
    if sigma.validate(&cuts).is_err() {
        return LinkReport::from_failure(Some((0, 0)));
    }
    let failing = cuts.constrained_pairs().into_iter().find(|&(i, j)| {
        endpoint_matched_paths(d, pi, i, j, &sigma.cuts[i], &sigma.cuts[j]).is_none()
    });
    LinkReport::from_failure(failing)
}

/// Nearest earlier index `k < i` with `|E^k| = |E^i|` and no smaller cut in
/// between.
fn linked_predecessor(cuts: &CutSequence, i: usize) -> Option<usize> {
    let t = cuts.size(i);
    if t == 0 {
        return None;
    }
    for k in (0..i).rev() {
        let s = cuts.size(k);
        if s < t {
            return None;
        }
        if s == t {
            return Some(k);
        }
    }
    None
}

/// Builds a linked sequence of ordered cuts for a linked ordering.
///
/// Sweeping left to right, a cut with a linked predecessor inherits its
/// numbering through a maximum path system between the two cuts (each path
/// crosses each of them exactly once). Any other cut keeps the positions of
/// arcs shared with the previous cut where possible and numbers the rest in
/// lexicographic order.
pub fn build_linked_ordered_cuts(
    d: &SimpleDigraph,
    pi: &VertexOrdering,
) -> Result<OrderedCutSequence> {
    if let Some((i, j)) = check_linked_ordering(d, pi).failing_pair {
        return Err(Error::NotLinked { i, j });
    }
    let cuts = cut_sequence(d, pi);
    let n = cuts.n();
    let mut eps: Vec<Vec<Arc>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let t = cuts.size(i);
        let numbered = match linked_predecessor(&cuts, i) {
            Some(k) => {
                let (sources, sinks) = cut_terminals(pi, k, i);
                let system = max_arc_disjoint_paths(d, &sources, &sinks, t)?
                    .ok_or(Error::NotLinked { i: k, j: i })?;
                let mut slots = vec![None; t];
                for s in 0..t {
                    let arcs = system.arcs(s);
                    let (first, last) = (arcs[0], arcs[arcs.len() - 1]);
                    let p = eps[k]
                        .iter()
                        .position(|&a| a == last)
                        .ok_or_else(|| Error::Internal("path misses the earlier cut".into()))?;
                    slots[p] = Some(first);
                }
                slots
                    .into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::Internal("path system is not a bijection".into()))?
            }
            None => carry_over(eps.last().map(Vec::as_slice).unwrap_or(&[]), &cuts.cuts[i]),
        };
        eps.push(numbered);
    }
    let sigma = OrderedCutSequence { cuts: eps };
    if check_linked_ordered_cuts(d, pi, &sigma).linked {
        return Ok(sigma);
    }
    if n <= ORDERED_CUTS_FALLBACK_LIMIT {
        if let Some(sigma) = search_linked_ordered_cuts(d, pi, &cuts) {
            return Ok(sigma);
        }
    }
    Err(Error::Internal(
        "could not build a linked sequence of ordered cuts".into(),
    ))
}

/// Numbers `cut` keeping each arc shared with `prev` at its old position when
/// that position is available.
fn carry_over(prev: &[Arc], cut: &[Arc]) -> Vec<Arc> {
    let t = cut.len();
    let mut slots: Vec<Option<Arc>> = vec![None; t];
    let mut placed = vec![false; t];
    for (p, a) in prev.iter().enumerate() {
        if p < t {
            if let Some(k) = cut.iter().position(|b| b == a) {
                slots[p] = Some(*a);
                placed[k] = true;
            }
        }
    }
    let mut fresh = cut.iter().zip(&placed).filter(|(_, &p)| !p).map(|(a, _)| *a);
    slots
        .into_iter()
        .map(|s| s.or_else(|| fresh.next()).expect("as many slots as arcs"))
        .collect()
}

/// Exhaustive search over numberings, checking each constrained pair as soon
/// as both of its cuts are numbered.
fn search_linked_ordered_cuts(
    d: &SimpleDigraph,
    pi: &VertexOrdering,
    cuts: &CutSequence,
) -> Option<OrderedCutSequence> {
    fn rec(
        d: &SimpleDigraph,
        pi: &VertexOrdering,
        cuts: &CutSequence,
        pairs: &[(usize, usize)],
        eps: &mut Vec<Vec<Arc>>,
    ) -> bool {
        let i = eps.len();
        if i == cuts.cuts.len() {
            return true;
        }
        let mut perm = cuts.cuts[i].clone();
        let mut found = false;
        for_each_permutation(&mut perm, 0, &mut |p| {
            if found {
                return;
            }
            let ok = pairs
                .iter()
                .filter(|&&(_, j)| j == i)
                .all(|&(k, _)| endpoint_matched_paths(d, pi, k, i, &eps[k], p).is_some());
            if ok {
                eps.push(p.to_vec());
                if rec(d, pi, cuts, pairs, eps) {
                    found = true;
                } else {
                    eps.pop();
                }
            }
        });
        found
    }
    let pairs = cuts.constrained_pairs();
    let mut eps = Vec::new();
    rec(d, pi, cuts, &pairs, &mut eps).then_some(OrderedCutSequence { cuts: eps })
}

fn for_each_permutation<T: Copy>(items: &mut [T], k: usize, f: &mut impl FnMut(&[T])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        for_each_permutation(items, k + 1, f);
        items.swap(k, i);
    }
}

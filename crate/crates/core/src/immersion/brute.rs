use crate::digraph::SimpleDigraph;
use crate::error::{Error, Result};

use super::model::{verify_strong_immersion, StrongImmersionModel};
use super::route::{Request, Router, Shape};

/// Size limits for [`find_immersion_bruteforce_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceLimits {
    pub max_pattern: usize,
    pub max_host: usize,
}

impl Default for BruteForceLimits {
    fn default() -> Self {
        BruteForceLimits {
            max_pattern: 6,
            max_host: 10,
        }
    }
}

/// Exhaustive strong-immersion search with the default limits.
pub fn find_immersion_bruteforce(
    h: &SimpleDigraph,
    d: &SimpleDigraph,
) -> Result<Option<StrongImmersionModel>> {
    find_immersion_bruteforce_with(h, d, BruteForceLimits::default())
}

/// Tries every injective vertex map (with degree pruning) and, for each,
/// backtracks over arc-disjoint vertex-simple routings that avoid the images
/// of non-incident vertices.
pub fn find_immersion_bruteforce_with(
    h: &SimpleDigraph,
    d: &SimpleDigraph,
    limits: BruteForceLimits,
) -> Result<Option<StrongImmersionModel>> {
    if h.n() > d.n() || h.arc_count() > d.arc_count() {
        return Ok(None);
    }
    if h.n() > limits.max_pattern {
        return Err(Error::LimitExceeded {
            what: "brute-force immersion pattern",
            n: h.n(),
            limit: limits.max_pattern,
        });
    }
    if d.n() > limits.max_host {
        return Err(Error::LimitExceeded {
            what: "brute-force immersion host",
            n: d.n(),
            limit: limits.max_host,
        });
    }

    // most constrained pattern vertices first
    let mut order: Vec<usize> = (0..h.n()).collect();
    order.sort_by_key(|&u| std::cmp::Reverse(h.out_degree(u) + h.in_degree(u)));
    let arcs: Vec<_> = h.arcs().collect();

    let mut vmap = vec![usize::MAX; h.n()];
    let mut taken = vec![false; d.n()];
    let found = assign(h, d, &order, 0, &mut vmap, &mut taken, &arcs);
    if let Some(m) = &found {
        verify_strong_immersion(h, d, m)
            .map_err(|v| Error::Internal(format!("brute-force model rejected: {v}")))?;
    }
    Ok(found)
}

fn assign(
    h: &SimpleDigraph,
    d: &SimpleDigraph,
    order: &[usize],
    k: usize,
    vmap: &mut [usize],
    taken: &mut [bool],
    arcs: &[(usize, usize)],
) -> Option<StrongImmersionModel> {
    if k == order.len() {
        let requests: Vec<Request> = arcs
            .iter()
            .map(|&(u, v)| Request {
                from: vmap[u],
                to: vmap[v],
                shape: Shape::Any,
            })
            .collect();
        let paths = Router::new(d, taken.to_vec(), None).route_all(&requests)?;
        return Some(StrongImmersionModel {
            vmap: vmap.to_vec(),
            pmap: arcs.iter().copied().zip(paths).collect(),
        });
    }
    let u = order[k];
    for x in 0..d.n() {
        if taken[x] || d.out_degree(x) < h.out_degree(u) || d.in_degree(x) < h.in_degree(u) {
            continue;
        }
        vmap[u] = x;
        taken[x] = true;
        let r = assign(h, d, order, k + 1, vmap, taken, arcs);
        taken[x] = false;
        vmap[u] = usize::MAX;
        if r.is_some() {
            return r;
        }
    }
    None
}

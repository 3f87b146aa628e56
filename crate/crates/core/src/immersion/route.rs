//! Backtracking search for arc-disjoint paths between fixed image vertices.

use std::collections::VecDeque;

use crate::digraph::SimpleDigraph;
use crate::ordering::VertexOrdering;

/// Shape constraint on one routed path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Shape {
    /// Any directed path.
    Any,
    /// Exactly the arc `from -> to`.
    Direct,
    /// First and last arcs are feedback arcs of the ordering.
    FeedbackEnds,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Request {
    pub from: usize,
    pub to: usize,
    pub shape: Shape,
}

/// Routes requests one after another. Paths are vertex-simple, pairwise
/// arc-disjoint, and pass through blocked vertices only at their own ends.
pub(crate) struct Router<'a> {
    d: &'a SimpleDigraph,
    pi: Option<&'a VertexOrdering>,
    blocked: Vec<bool>,
    used: Vec<bool>,
    on_path: Vec<bool>,
}

impl<'a> Router<'a> {
    pub fn new(d: &'a SimpleDigraph, blocked: Vec<bool>, pi: Option<&'a VertexOrdering>) -> Self {
        let n = d.n();
        Router {
            d,
            pi,
            blocked,
            used: vec![false; n * n],
            on_path: vec![false; n],
        }
    }

    fn n(&self) -> usize {
        self.d.n()
    }

    fn free(&self, u: usize, v: usize) -> bool {
        self.d.has_arc(u, v) && !self.used[u * self.n() + v]
    }

    fn feedback(&self, u: usize, v: usize) -> bool {
        self.pi.is_none_or(|pi| pi.is_feedback((u, v)))
    }

    /// Whether `to` is reachable from `from` over unused arcs without
    /// visiting blocked or already-visited vertices in between.
    fn reachable(&self, from: usize, to: usize, respect_path: bool) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            for y in self.d.out_neighbors(x) {
                if seen[y] || self.used[x * n + y] {
                    continue;
                }
                if y == to {
                    return true;
                }
                if self.blocked[y] || (respect_path && self.on_path[y]) {
                    continue;
                }
                seen[y] = true;
                queue.push_back(y);
            }
        }
        false
    }

    pub fn route_all(&mut self, requests: &[Request]) -> Option<Vec<Vec<usize>>> {
        let mut out = Vec::with_capacity(requests.len());
        if self.route_from(requests, 0, &mut out) {
            Some(out)
        } else {
            None
        }
    }

    fn route_from(&mut self, reqs: &[Request], k: usize, out: &mut Vec<Vec<usize>>) -> bool {
        if k == reqs.len() {
            return true;
        }
        if reqs[k..].iter().any(|r| !self.reachable(r.from, r.to, false)) {
            return false;
        }
        let r = reqs[k];
        let mut path = vec![r.from];
        self.on_path[r.from] = true;
        let ok = self.extend(reqs, k, &mut path, out);
        self.on_path[r.from] = false;
        ok
    }

    fn extend(
        &mut self,
        reqs: &[Request],
        k: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> bool {
        let r = reqs[k];
        let x = *path.last().expect("path starts at its source");
        let n = self.n();
        let first = path.len() == 1;

        // try finishing first, so short paths are preferred
        if self.free(x, r.to)
            && !self.on_path[r.to]
            && match r.shape {
                Shape::Any => true,
                Shape::Direct => first,
                Shape::FeedbackEnds => self.feedback(x, r.to),
            }
        {
            path.push(r.to);
            self.mark(path, true);
            out.push(path.clone());
            // later paths may revisit these vertices, just not these arcs
            self.set_on_path(&path[..path.len() - 1], false);
            let done = self.route_from(reqs, k + 1, out);
            self.set_on_path(&path[..path.len() - 1], true);
            if done {
                return true;
            }
            out.pop();
            self.mark(path, false);
            path.pop();
        }
        if r.shape == Shape::Direct {
            return false;
        }
        if !first && !self.reachable(x, r.to, true) {
            return false;
        }
        for y in 0..n {
            if y == r.to || self.on_path[y] || self.blocked[y] || !self.free(x, y) {
                continue;
            }
            if r.shape == Shape::FeedbackEnds && first && !self.feedback(x, y) {
                continue;
            }
            path.push(y);
            self.on_path[y] = true;
            let ok = self.extend(reqs, k, path, out);
            self.on_path[y] = false;
            path.pop();
            if ok {
                return true;
            }
        }
        false
    }

    fn set_on_path(&mut self, vertices: &[usize], value: bool) {
        for &v in vertices {
            self.on_path[v] = value;
        }
    }

    fn mark(&mut self, path: &[usize], value: bool) {
        let n = self.n();
        for w in path.windows(2) {
            self.used[w[0] * n + w[1]] = value;
        }
    }
}

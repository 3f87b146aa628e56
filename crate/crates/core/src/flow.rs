//! Arc-disjoint path systems via unit-capacity maximum flow.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::digraph::{Arc, SimpleDigraph};
use crate::error::{Error, Result};
use crate::ordering::VertexOrdering;

/// A family of directed paths, each a vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathSystem {
    pub paths: Vec<Vec<usize>>,
}

impl PathSystem {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Arcs of path `s` in order.
    pub fn arcs(&self, s: usize) -> Vec<Arc> {
        path_arcs(&self.paths[s])
    }

    /// One line per path listing its vertices.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.paths {
            let ids: Vec<String> = p.iter().map(|v| v.to_string()).collect();
            out.push_str(&ids.join(" "));
            out.push('\n');
        }
        out
    }
}

pub(crate) fn path_arcs(path: &[usize]) -> Vec<Arc> {
    path.windows(2).map(|w| (w[0], w[1])).collect()
}

/// How to treat a vertex that is both a source and a sink.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SharedTerminals {
    /// Overlapping terminal sets are an error.
    #[default]
    Forbid,
    /// Each shared vertex contributes one zero-length path.
    AllowTrivial,
}

/// Problems found by [`validate_path_system`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathSystemViolation {
    EmptyPath(usize),
    MissingArc { path: usize, arc: Arc },
    RepeatedVertex { path: usize, vertex: usize },
    SharedArc { first: usize, second: usize, arc: Arc },
    BadStart { path: usize, vertex: usize },
    BadEnd { path: usize, vertex: usize },
}

impl fmt::Display for PathSystemViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyPath(p) => write!(f, "path {p} is empty"),
            Self::MissingArc { path, arc } => write!(f, "path {path} uses missing arc {arc:?}"),
            Self::RepeatedVertex { path, vertex } => {
                write!(f, "path {path} visits vertex {vertex} twice")
            }
            Self::SharedArc { first, second, arc } => {
                write!(f, "paths {first} and {second} share arc {arc:?}")
            }
            Self::BadStart { path, vertex } => {
                write!(f, "path {path} starts at non-source {vertex}")
            }
            Self::BadEnd { path, vertex } => write!(f, "path {path} ends at non-sink {vertex}"),
        }
    }
}

/// Checks arc existence, pairwise arc-disjointness, simplicity and endpoint
/// membership of every path.
pub fn validate_path_system(
    d: &SimpleDigraph,
    system: &PathSystem,
    sources: &[usize],
    sinks: &[usize],
) -> std::result::Result<(), PathSystemViolation> {
    let mut owner = std::collections::HashMap::new();
    for (p, path) in system.paths.iter().enumerate() {
        let (&start, &end) = match (path.first(), path.last()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(PathSystemViolation::EmptyPath(p)),
        };
        if !sources.contains(&start) {
            return Err(PathSystemViolation::BadStart { path: p, vertex: start });
        }
        if !sinks.contains(&end) {
            return Err(PathSystemViolation::BadEnd { path: p, vertex: end });
        }
        let mut seen = HashSet::new();
        for &v in path {
            if !seen.insert(v) {
                return Err(PathSystemViolation::RepeatedVertex { path: p, vertex: v });
            }
        }
        for arc in path_arcs(path) {
            if !d.has_arc(arc.0, arc.1) {
                return Err(PathSystemViolation::MissingArc { path: p, arc });
            }
            if let Some(q) = owner.insert(arc, p) {
                return Err(PathSystemViolation::SharedArc { first: q, second: p, arc });
            }
        }
    }
    Ok(())
}

const INF: u32 = u32::MAX / 2;

/// Residual network with explicit reverse edges.
struct FlowNet {
    head: Vec<usize>,
    cap: Vec<u32>,
    adj: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add_edge(&mut self, u: usize, v: usize, cap: u32) -> usize {
        let id = self.head.len();
        self.head.push(v);
        self.cap.push(cap);
        self.adj[u].push(id);
        self.head.push(u);
        self.cap.push(0);
        self.adj[v].push(id + 1);
        id
    }

    /// Augments along shortest paths until `limit` units flow or none remain.
    fn max_flow(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        let mut total = 0;
        while total < limit {
            let mut pred = vec![usize::MAX; self.adj.len()];
            let mut seen = vec![false; self.adj.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &e in &self.adj[u] {
                    let v = self.head[e];
                    if self.cap[e] > 0 && !seen[v] {
                        seen[v] = true;
                        pred[v] = e;
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut bottleneck = limit - total;
            let mut v = t;
            while v != s {
                let e = pred[v];
                bottleneck = bottleneck.min(self.cap[e]);
                v = self.head[e ^ 1];
            }
            let mut v = t;
            while v != s {
                let e = pred[v];
                self.cap[e] -= bottleneck;
                self.cap[e ^ 1] += bottleneck;
                v = self.head[e ^ 1];
            }
            total += bottleneck;
        }
        total
    }
}

struct Terminals {
    sources: Vec<usize>,
    sinks: Vec<usize>,
    trivial: Vec<usize>,
}

fn split_terminals(
    n: usize,
    sources: &[usize],
    sinks: &[usize],
    shared: SharedTerminals,
) -> Result<Terminals> {
    let mut is_sink = vec![false; n];
    for &v in sinks {
        if v >= n {
            return Err(Error::InvalidArgument(format!("sink {v} out of range")));
        }
        is_sink[v] = true;
    }
    let mut trivial = Vec::new();
    let mut pure_sources = Vec::new();
    for &v in sources {
        if v >= n {
            return Err(Error::InvalidArgument(format!("source {v} out of range")));
        }
        if is_sink[v] {
            if shared == SharedTerminals::Forbid {
                return Err(Error::InvalidArgument(format!(
                    "vertex {v} is both a source and a sink"
                )));
            }
            trivial.push(v);
        } else {
            pure_sources.push(v);
        }
    }
    pure_sources.sort_unstable();
    pure_sources.dedup();
    trivial.sort_unstable();
    trivial.dedup();
    let pure_sinks = {
        let mut s: Vec<usize> = sinks.iter().copied().filter(|v| !trivial.contains(v)).collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    Ok(Terminals {
        sources: pure_sources,
        sinks: pure_sinks,
        trivial,
    })
}

/// Unit capacities on the arcs of `d`; uncapacitated terminal arcs.
fn build_network(d: &SimpleDigraph, term: &Terminals) -> (FlowNet, Vec<(Arc, usize)>, usize, usize) {
    let n = d.n();
    let (s, t) = (n, n + 1);
    let mut net = FlowNet::new(n + 2);
    let mut arc_edges = Vec::new();
    for arc in d.arcs() {
        let e = net.add_edge(arc.0, arc.1, 1);
        arc_edges.push((arc, e));
    }
    for &v in &term.sources {
        net.add_edge(s, v, INF);
    }
    for &v in &term.sinks {
        net.add_edge(v, t, INF);
    }
    (net, arc_edges, s, t)
}

/// Maximum number of pairwise arc-disjoint paths from `sources` to `sinks`.
pub fn max_flow_value(
    d: &SimpleDigraph,
    sources: &[usize],
    sinks: &[usize],
    shared: SharedTerminals,
) -> Result<usize> {
    let term = split_terminals(d.n(), sources, sinks, shared)?;
    let (mut net, _, s, t) = build_network(d, &term);
    Ok(term.trivial.len() + net.max_flow(s, t, INF) as usize)
}

/// `t` pairwise arc-disjoint paths from `sources` to `sinks`, or `None` when
/// the maximum is smaller. Returned paths are simple, start at their last
/// source vertex and stop at their first sink vertex.
pub fn max_arc_disjoint_paths(
    d: &SimpleDigraph,
    sources: &[usize],
    sinks: &[usize],
    t: usize,
) -> Result<Option<PathSystem>> {
    max_arc_disjoint_paths_with(d, sources, sinks, t, SharedTerminals::Forbid)
}

pub fn max_arc_disjoint_paths_with(
    d: &SimpleDigraph,
    sources: &[usize],
    sinks: &[usize],
    t: usize,
    shared: SharedTerminals,
) -> Result<Option<PathSystem>> {
    let term = split_terminals(d.n(), sources, sinks, shared)?;
    let mut paths: Vec<Vec<usize>> = term.trivial.iter().take(t).map(|&v| vec![v]).collect();
    let need = t - paths.len();
    if need == 0 {
        return Ok(Some(PathSystem { paths }));
    }
    let (mut net, arc_edges, s, sink) = build_network(d, &term);
    if (net.max_flow(s, sink, need as u32) as usize) < need {
        return Ok(None);
    }

    let n = d.n();
    let mut is_source = vec![false; n];
    let mut is_sink = vec![false; n];
    term.sources.iter().for_each(|&v| is_source[v] = true);
    term.sinks.iter().for_each(|&v| is_sink[v] = true);

    // flow-carrying arcs, consumed as paths are peeled off
    let mut carry: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &((u, v), e) in &arc_edges {
        if net.cap[e] == 0 {
            carry[u].push(v);
        }
    }
    // remaining units entering from the super-source, per vertex
    let mut supply = vec![0usize; n];
    for &e in &net.adj[s] {
        if e % 2 == 0 {
            let v = net.head[e];
            supply[v] += net.cap[e ^ 1] as usize;
        }
    }

    while paths.len() < t {
        let start = (0..n)
            .find(|&v| supply[v] > 0)
            .ok_or_else(|| Error::Internal("flow decomposition ran dry".into()))?;
        supply[start] -= 1;
        let mut walk = vec![start];
        let mut index_of = vec![usize::MAX; n];
        index_of[start] = 0;
        let mut cur = start;
        loop {
            if is_sink[cur] {
                break;
            }
            let next = carry[cur]
                .pop()
                .ok_or_else(|| Error::Internal("flow is not conserved".into()))?;
            if index_of[next] != usize::MAX {
                // drop the cycle closed by this arc
                for &w in &walk[index_of[next] + 1..] {
                    index_of[w] = usize::MAX;
                }
                walk.truncate(index_of[next] + 1);
            } else {
                index_of[next] = walk.len();
                walk.push(next);
            }
            cur = next;
        }
        let last_source = walk.iter().rposition(|&v| is_source[v]).unwrap_or(0);
        paths.push(walk.split_off(last_source));
    }
    Ok(Some(PathSystem { paths }))
}

/// The vertices of `pi` after position `j` (1-based), and those up to `i`.
pub fn cut_terminals(pi: &VertexOrdering, i: usize, j: usize) -> (Vec<usize>, Vec<usize>) {
    (pi.suffix(j).to_vec(), pi.prefix(i).to_vec())
}

/// Paths `P_1..P_t` from the suffix after `j` to the prefix up to `i`
/// (`i < j`) where `P_s` starts with `eps_j[s - 1]` and ends with
/// `eps_i[s - 1]`. Returns `None` if no such system exists.
pub fn endpoint_matched_paths(
    d: &SimpleDigraph,
    pi: &VertexOrdering,
    i: usize,
    j: usize,
    eps_i: &[Arc],
    eps_j: &[Arc],
) -> Option<PathSystem> {
    assert!(i < j && j <= pi.len(), "cut indices out of order");
    if eps_i.len() != eps_j.len() {
        return None;
    }
    let t = eps_i.len();
    let in_region = |v: usize| {
        let p = pi.position(v);
        i <= p && p < j
    };

    // fixed single-arc paths and the free segments still to route
    let mut fixed: Vec<Option<Vec<usize>>> = vec![None; t];
    let mut jobs = Vec::new();
    for s in 0..t {
        let (first, last) = (eps_j[s], eps_i[s]);
        if !pi.in_cut(first, j) || !pi.in_cut(last, i) {
            return None;
        }
        if first == last {
            fixed[s] = Some(vec![first.0, first.1]);
            continue;
        }
        // an arc crossing both cuts must be a whole path on its own
        if pi.in_cut(first, i) || pi.in_cut(last, j) {
            return None;
        }
        debug_assert!(in_region(first.1) && in_region(last.0));
        jobs.push((s, first.1, last.0));
    }

    let region: Vec<usize> = pi.order()[i..j].to_vec();
    let mut local = vec![usize::MAX; d.n()];
    for (k, &v) in region.iter().enumerate() {
        local[v] = k;
    }
    let mut search = MatchedSearch::new(d, &region, &local);
    let segments = search.route(&jobs)?;

    let mut paths = Vec::with_capacity(t);
    let mut seg_iter = jobs.iter().zip(segments);
    for (s, f) in fixed.into_iter().enumerate() {
        match f {
            Some(p) => paths.push(p),
            None => {
                let (&(js, _, _), seg) = seg_iter.next().expect("one segment per job");
                debug_assert_eq!(js, s);
                let mut p = vec![eps_j[s].0];
                p.extend(seg);
                p.push(eps_i[s].1);
                paths.push(p);
            }
        }
    }
    Some(PathSystem { paths })
}

/// Backtracking router for the free segments of an endpoint-matched system.
struct MatchedSearch<'a> {
    d: &'a SimpleDigraph,
    region: &'a [usize],
    local: &'a [usize],
    /// region arcs as (from, to) in local indices
    arcs: Vec<(usize, usize)>,
    out: Vec<Vec<(usize, usize)>>,
    used: Vec<bool>,
    failed: HashSet<(usize, Vec<u64>)>,
}

impl<'a> MatchedSearch<'a> {
    fn new(d: &'a SimpleDigraph, region: &'a [usize], local: &'a [usize]) -> Self {
        let k = region.len();
        let mut arcs = Vec::new();
        let mut out = vec![Vec::new(); k];
        for (a, &u) in region.iter().enumerate() {
            for (b, &v) in region.iter().enumerate() {
                if a != b && d.has_arc(u, v) {
                    out[a].push((b, arcs.len()));
                    arcs.push((a, b));
                }
            }
        }
        let used = vec![false; arcs.len()];
        MatchedSearch {
            d,
            region,
            local,
            arcs,
            out,
            used,
            failed: HashSet::new(),
        }
    }

    fn key(&self, k: usize) -> (usize, Vec<u64>) {
        let mut bits = vec![0u64; self.used.len().div_ceil(64)];
        for (e, &u) in self.used.iter().enumerate() {
            if u {
                bits[e / 64] |= 1 << (e % 64);
            }
        }
        (k, bits)
    }

    /// Routes every job; segments are the interior vertex sequences from the
    /// head of the first arc to the tail of the last arc, inclusive.
    fn route(&mut self, jobs: &[(usize, usize, usize)]) -> Option<Vec<Vec<usize>>> {
        let local_jobs: Vec<(usize, usize)> = jobs
            .iter()
            .map(|&(_, x, y)| (self.local[x], self.local[y]))
            .collect();
        let mut acc = Vec::new();
        if self.solve(&local_jobs, 0, &mut acc) {
            Some(
                acc.into_iter()
                    .map(|seg: Vec<usize>| seg.into_iter().map(|v| self.region[v]).collect())
                    .collect(),
            )
        } else {
            None
        }
    }

    fn solve(&mut self, jobs: &[(usize, usize)], k: usize, acc: &mut Vec<Vec<usize>>) -> bool {
        if k == jobs.len() {
            return true;
        }
        if !self.feasible(&jobs[k..]) {
            return false;
        }
        let key = self.key(k);
        if self.failed.contains(&key) {
            return false;
        }
        let (x, y) = jobs[k];
        let mut visited = vec![false; self.region.len()];
        visited[x] = true;
        let mut path = vec![x];
        let mut arcs_taken = Vec::new();
        if self.extend(jobs, k, y, &mut path, &mut arcs_taken, &mut visited, acc) {
            return true;
        }
        self.failed.insert(key);
        false
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &mut self,
        jobs: &[(usize, usize)],
        k: usize,
        y: usize,
        path: &mut Vec<usize>,
        taken: &mut Vec<usize>,
        visited: &mut [bool],
        acc: &mut Vec<Vec<usize>>,
    ) -> bool {
        let cur = *path.last().expect("non-empty");
        if cur == y {
            acc.push(path.clone());
            if self.solve(jobs, k + 1, acc) {
                return true;
            }
            acc.pop();
            return false;
        }
        if !self.reaches(cur, y, visited) {
            return false;
        }
        for idx in 0..self.out[cur].len() {
            let (next, e) = self.out[cur][idx];
            if self.used[e] || visited[next] {
                continue;
            }
            self.used[e] = true;
            visited[next] = true;
            path.push(next);
            taken.push(e);
            if self.extend(jobs, k, y, path, taken, visited, acc) {
                return true;
            }
            taken.pop();
            path.pop();
            visited[next] = false;
            self.used[e] = false;
        }
        false
    }

    /// Whether `to` is reachable from `from` over unused arcs avoiding
    /// visited vertices (other than `from`).
    fn reaches(&self, from: usize, to: usize, visited: &[bool]) -> bool {
        let mut seen = vec![false; self.region.len()];
        seen[from] = true;
        let mut stack = vec![from];
        while let Some(u) = stack.pop() {
            if u == to {
                return true;
            }
            for &(v, e) in &self.out[u] {
                if !self.used[e] && !seen[v] && (!visited[v] || v == to) {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        false
    }

    /// Necessary condition for routing `jobs`: each pair connected, and an
    /// unordered flow of the right size.
    fn feasible(&self, jobs: &[(usize, usize)]) -> bool {
        let nothing = vec![false; self.region.len()];
        if jobs.iter().any(|&(x, y)| !self.reaches(x, y, &nothing)) {
            return false;
        }
        let k = self.region.len();
        let (s, t) = (k, k + 1);
        let mut net = FlowNet::new(k + 2);
        for (e, &(a, b)) in self.arcs.iter().enumerate() {
            if !self.used[e] {
                net.add_edge(a, b, 1);
            }
        }
        for &(x, y) in jobs {
            net.add_edge(s, x, 1);
            net.add_edge(y, t, 1);
        }
        let _ = self.d;
        net.max_flow(s, t, jobs.len() as u32) as usize == jobs.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_disjoint_routes() {
        // s1 -> a -> t1, s2 -> b -> t2
        let d = SimpleDigraph::from_arcs(6, [(0, 2), (2, 4), (1, 3), (3, 5)]).unwrap();
        let ps = max_arc_disjoint_paths(&d, &[0, 1], &[4, 5], 2).unwrap().unwrap();
        assert_eq!(ps.len(), 2);
        validate_path_system(&d, &ps, &[0, 1], &[4, 5]).unwrap();
    }

    #[test]
    fn shared_arc_is_a_unit_cut() {
        let d = SimpleDigraph::from_arcs(6, [(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)]).unwrap();
        assert_eq!(max_flow_value(&d, &[0, 1], &[4, 5], SharedTerminals::Forbid).unwrap(), 1);
        assert!(max_arc_disjoint_paths(&d, &[0, 1], &[4, 5], 2).unwrap().is_none());
        assert_eq!(max_arc_disjoint_paths(&d, &[0, 1], &[4, 5], 1).unwrap().unwrap().len(), 1);
    }

    #[test]
    fn overlapping_terminals() {
        let d = SimpleDigraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        assert!(max_arc_disjoint_paths(&d, &[0, 1], &[1, 2], 1).is_err());
        let ps = max_arc_disjoint_paths_with(&d, &[0, 1], &[1, 2], 2, SharedTerminals::AllowTrivial)
            .unwrap()
            .unwrap();
        assert_eq!(ps.paths, vec![vec![1], vec![0, 1, 2]]);
    }

    #[test]
    fn decomposition_drops_cycles() {
        // the flow may circulate through 1 -> 2 -> 3 -> 1; paths must be simple
        let d = SimpleDigraph::from_arcs(
            5,
            [(0, 1), (1, 2), (2, 3), (3, 1), (2, 4), (3, 4)],
        )
        .unwrap();
        let ps = max_arc_disjoint_paths(&d, &[0], &[4], 1).unwrap().unwrap();
        validate_path_system(&d, &ps, &[0], &[4]).unwrap();
    }

    #[test]
    fn zero_paths() {
        let d = SimpleDigraph::empty(2);
        assert_eq!(max_arc_disjoint_paths(&d, &[0], &[1], 0).unwrap().unwrap().len(), 0);
    }

    #[test]
    fn matched_single_arc_and_empty() {
        let d = SimpleDigraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let pi = VertexOrdering::identity(3);
        let ps = endpoint_matched_paths(&d, &pi, 1, 2, &[(2, 0)], &[(2, 0)]).unwrap();
        assert_eq!(ps.paths, vec![vec![2, 0]]);
        let ps = endpoint_matched_paths(&d, &pi, 0, 3, &[], &[]).unwrap();
        assert!(ps.is_empty());
    }

    /// Two lanes that must cross. Under the identity ordering cut 2 is
    /// {(4,0), (5,1)} and cut 6 is {(6,2), (7,3)}; inside the region the only
    /// arcs are 2 -> 5 and 3 -> 4, so (6,2) can only be continued by (5,1).
    pub(crate) fn crossing_instance() -> (SimpleDigraph, VertexOrdering) {
        let d = SimpleDigraph::from_arcs(8, [(4, 0), (5, 1), (2, 5), (3, 4), (6, 2), (7, 3)])
            .unwrap();
        (d, VertexOrdering::identity(8))
    }

    #[test]
    fn crossing_requires_other_pairing() {
        let (d, pi) = crossing_instance();
        let cs = crate::ordering::cut_sequence(&d, &pi);
        assert_eq!(cs.size(2), 2);
        assert_eq!(cs.size(6), 2);
        let (src, snk) = cut_terminals(&pi, 2, 6);
        assert!(max_arc_disjoint_paths(&d, &src, &snk, 2).unwrap().is_some());
        let eps_i = cs.cuts[2].clone();
        let mut eps_j = cs.cuts[6].clone();
        assert!(endpoint_matched_paths(&d, &pi, 2, 6, &eps_i, &eps_j).is_none());
        eps_j.swap(0, 1);
        let ok = endpoint_matched_paths(&d, &pi, 2, 6, &eps_i, &eps_j).unwrap();
        assert_eq!(ok.paths, vec![vec![7, 3, 4, 0], vec![6, 2, 5, 1]]);
        validate_path_system(&d, &ok, &src, &snk).unwrap();
    }
}

//! Vertex orderings and their cut sequences.
//!
//! Positions are 1-based where they match the usual layout notation: cut `i`
//! (for `i` in `0..=n`) holds the arcs from the last `n - i` vertices back to
//! the first `i`. [`VertexOrdering::position`] is 0-based, so an arc `(u, v)`
//! lies in cut `i` exactly when `position(v) < i <= position(u)`.

use std::fmt;

use crate::digraph::{Arc, SimpleDigraph};
use crate::error::{parse_err, Error, Result};

/// A permutation of the vertices, stored with its inverse.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexOrdering {
    order: Vec<usize>,
    pos: Vec<usize>,
}

impl VertexOrdering {
    pub fn identity(n: usize) -> Self {
        VertexOrdering {
            order: (0..n).collect(),
            pos: (0..n).collect(),
        }
    }

    /// `order[k]` is the vertex at (0-based) position `k`.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut pos = vec![usize::MAX; n];
        for (k, &v) in order.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidArgument(format!(
                    "vertex {v} out of range in an ordering of {n} vertices"
                )));
            }
            if pos[v] != usize::MAX {
                return Err(Error::InvalidArgument(format!(
                    "vertex {v} appears twice in the ordering"
                )));
            }
            pos[v] = k;
        }
        Ok(VertexOrdering { order, pos })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.order.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// 0-based position of `v`.
    #[inline]
    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    /// The vertex at 1-based position `i`.
    #[inline]
    pub fn vertex_at(&self, i: usize) -> usize {
        self.order[i - 1]
    }

    /// The first `i` vertices.
    pub fn prefix(&self, i: usize) -> &[usize] {
        &self.order[..i.min(self.len())]
    }

    /// All but the first `i` vertices.
    pub fn suffix(&self, i: usize) -> &[usize] {
        &self.order[i.min(self.len())..]
    }

    #[inline]
    pub fn is_feedback(&self, (u, v): Arc) -> bool {
        self.pos[u] > self.pos[v]
    }

    #[inline]
    pub fn in_cut(&self, (u, v): Arc, i: usize) -> bool {
        self.pos[v] < i && i <= self.pos[u]
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let Some((k, line)) = lines.next() else {
            return Ok(VertexOrdering::identity(0));
        };
        let order = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| parse_err(k + 1, format!("malformed vertex id {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some((k, _)) = lines.next() {
            return Err(parse_err(k + 1, "an ordering is a single line"));
        }
        VertexOrdering::new(order).map_err(|e| parse_err(k + 1, e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let ids: Vec<String> = self.order.iter().map(|v| v.to_string()).collect();
        format!("{}\n", ids.join(" "))
    }
}

impl fmt::Debug for VertexOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VertexOrdering{:?}", self.order)
    }
}

/// The cuts `E^0, ..., E^n` of an ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSequence {
    /// `cuts[i]` in lexicographic arc order.
    pub cuts: Vec<Vec<Arc>>,
}

impl CutSequence {
    pub fn cut_vector(&self) -> Vec<usize> {
        self.cuts.iter().map(Vec::len).collect()
    }

    pub fn width(&self) -> usize {
        self.cuts.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn size(&self, i: usize) -> usize {
        self.cuts[i].len()
    }

    /// Index of the last cut.
    pub fn n(&self) -> usize {
        self.cuts.len() - 1
    }

    /// Pairs `i < j` with `|E^i| = |E^j| = t > 0` and no smaller cut in
    /// between. These are the pairs constrained by linkedness.
    pub fn constrained_pairs(&self) -> Vec<(usize, usize)> {
        let sizes = self.cut_vector();
        let mut out = Vec::new();
        for i in 0..sizes.len() {
            let t = sizes[i];
            if t == 0 {
                continue;
            }
            for (j, &s) in sizes.iter().enumerate().skip(i + 1) {
                if s < t {
                    break;
                }
                if s == t {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Computes `E^i = E(suffix_i, prefix_i)` for every `i` in `0..=n`.
pub fn cut_sequence(d: &SimpleDigraph, pi: &VertexOrdering) -> CutSequence {
    assert_eq!(d.n(), pi.len(), "ordering does not match the digraph");
    let n = d.n();
    let mut cuts = vec![Vec::new(); n + 1];
    for (u, v) in d.arcs() {
        let (pu, pv) = (pi.position(u), pi.position(v));
        if pu > pv {
            for cut in &mut cuts[pv + 1..=pu] {
                cut.push((u, v));
            }
        }
    }
    CutSequence { cuts }
}

/// Width of `pi` without materializing the cuts.
pub fn ordering_width(d: &SimpleDigraph, pi: &VertexOrdering) -> usize {
    let n = d.n();
    let mut delta = vec![0isize; n + 2];
    for (u, v) in d.arcs() {
        let (pu, pv) = (pi.position(u), pi.position(v));
        if pu > pv {
            delta[pv + 1] += 1;
            delta[pu + 1] -= 1;
        }
    }
    let mut run = 0isize;
    let mut best = 0isize;
    for x in &delta[..=n] {
        run += x;
        best = best.max(run);
    }
    best as usize
}

/// One numbering `ε^i` per cut: `cuts[i][s - 1]` is the arc at position `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedCutSequence {
    pub cuts: Vec<Vec<Arc>>,
}

impl OrderedCutSequence {
    /// Numbers every cut in lexicographic arc order.
    pub fn lexicographic(cuts: &CutSequence) -> Self {
        OrderedCutSequence {
            cuts: cuts.cuts.clone(),
        }
    }

    /// Arc at 1-based position `s` of cut `i`.
    pub fn arc(&self, i: usize, s: usize) -> Arc {
        self.cuts[i][s - 1]
    }

    /// 1-based position of `arc` in cut `i`.
    pub fn position_of(&self, i: usize, arc: Arc) -> Option<usize> {
        self.cuts[i].iter().position(|&a| a == arc).map(|p| p + 1)
    }

    /// Checks that cut `i` is numbered by a permutation of `E^i`.
    pub fn validate(&self, cuts: &CutSequence) -> Result<()> {
        if self.cuts.len() != cuts.cuts.len() {
            return Err(Error::InvalidArgument(format!(
                "{} ordered cuts for {} cuts",
                self.cuts.len(),
                cuts.cuts.len()
            )));
        }
        for (i, (eps, cut)) in self.cuts.iter().zip(&cuts.cuts).enumerate() {
            let mut sorted = eps.clone();
            sorted.sort_unstable();
            if &sorted != cut {
                return Err(Error::InvalidArgument(format!(
                    "ordered cut {i} is not a permutation of E^{i}"
                )));
            }
        }
        Ok(())
    }

    /// One line `i: (u1,v1) (u2,v2) ...` per index.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, cut) in self.cuts.iter().enumerate() {
            s.push_str(&format!("{i}:"));
            for (u, v) in cut {
                s.push_str(&format!(" ({u},{v})"));
            }
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cuts = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (idx, rest) = line
                .split_once(':')
                .ok_or_else(|| parse_err(k + 1, "expected \"i: arcs\""))?;
            let idx: usize = idx
                .trim()
                .parse()
                .map_err(|_| parse_err(k + 1, "malformed cut index"))?;
            if idx != cuts.len() {
                return Err(parse_err(k + 1, format!("expected cut index {}", cuts.len())));
            }
            let arcs = rest
                .split_whitespace()
                .map(|tok| parse_arc(tok).ok_or_else(|| parse_err(k + 1, format!("bad arc {tok:?}"))))
                .collect::<Result<Vec<_>>>()?;
            cuts.push(arcs);
        }
        Ok(OrderedCutSequence { cuts })
    }
}

/// Parses `(u,v)`.
pub(crate) fn parse_arc(tok: &str) -> Option<Arc> {
    let inner = tok.strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn transitive(n: usize) -> SimpleDigraph {
        let mut d = SimpleDigraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                d.add_arc(u, v);
            }
        }
        d
    }

    fn complete_symmetric(n: usize) -> SimpleDigraph {
        let mut d = transitive(n);
        for u in 0..n {
            for v in 0..u {
                d.add_arc(u, v);
            }
        }
        d
    }

    #[test]
    fn transitive_tournament_has_zero_cuts() {
        let d = transitive(6);
        let cs = cut_sequence(&d, &VertexOrdering::identity(6));
        assert_eq!(cs.cut_vector(), vec![0; 7]);
        assert_eq!(cs.width(), 0);
    }

    #[test]
    fn three_cycle_cut_vector() {
        let d = SimpleDigraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let cs = cut_sequence(&d, &VertexOrdering::identity(3));
        assert_eq!(cs.cut_vector(), vec![0, 1, 1, 0]);
        assert_eq!(cs.cuts[1], vec![(2, 0)]);
        assert_eq!(cs.width(), 1);
        assert_eq!(cs.constrained_pairs(), vec![(1, 2)]);
    }

    #[test]
    fn complete_symmetric_four_any_ordering() {
        let d = complete_symmetric(4);
        for order in [vec![0, 1, 2, 3], vec![3, 1, 0, 2], vec![2, 3, 0, 1]] {
            let pi = VertexOrdering::new(order).unwrap();
            let cs = cut_sequence(&d, &pi);
            assert_eq!(cs.cut_vector(), vec![0, 3, 4, 3, 0]);
            assert_eq!(ordering_width(&d, &pi), 4);
        }
    }

    #[test]
    fn single_vertex_cut_sequence() {
        let cs = cut_sequence(&SimpleDigraph::empty(1), &VertexOrdering::identity(1));
        assert_eq!(cs.cuts, vec![Vec::<Arc>::new(), Vec::new()]);
    }

    #[test]
    fn ordering_rejects_non_permutations() {
        assert!(VertexOrdering::new(vec![0, 0]).is_err());
        assert!(VertexOrdering::new(vec![0, 2]).is_err());
        let pi = VertexOrdering::new(vec![2, 0, 1]).unwrap();
        assert_eq!(pi.position(2), 0);
        assert_eq!(pi.vertex_at(3), 1);
        assert_eq!(pi.prefix(1), &[2]);
        assert_eq!(pi.suffix(1), &[0, 1]);
        assert_eq!(VertexOrdering::parse(&pi.to_text()).unwrap(), pi);
    }

    #[test]
    fn ordered_cut_text_round_trip() {
        let d = complete_symmetric(3);
        let cs = cut_sequence(&d, &VertexOrdering::identity(3));
        let oc = OrderedCutSequence::lexicographic(&cs);
        let text = oc.to_text();
        assert_eq!(text, "0:\n1: (1,0) (2,0)\n2: (2,0) (2,1)\n3:\n");
        assert_eq!(OrderedCutSequence::parse(&text).unwrap(), oc);
        oc.validate(&cs).unwrap();
    }
}

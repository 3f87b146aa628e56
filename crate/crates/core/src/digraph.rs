//! Simple and semi-complete digraphs on the vertex set `0..n`.
//!
//! Adjacency is a dense boolean matrix: semi-complete digraphs have at least
//! one arc per vertex pair, so there is nothing to gain from sparse storage.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};
use crate::ordering::VertexOrdering;

/// An arc `(tail, head)`.
pub type Arc = (usize, usize);

/// A digraph without loops or parallel arcs. Both `(u, v)` and `(v, u)` may
/// be present; such a pair is called symmetric.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleDigraph {
    n: usize,
    adj: Vec<bool>,
}

impl SimpleDigraph {
    /// The edgeless digraph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        SimpleDigraph {
            n,
            adj: vec![false; n * n],
        }
    }

    /// Builds a digraph from an arc list. Loops and duplicate arcs are
    /// rejected, as are endpoints outside `0..n`.
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        let mut d = SimpleDigraph::empty(n);
        for (u, v) in arcs {
            d.try_add_arc(u, v)?;
        }
        Ok(d)
    }

    fn try_add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidArgument(format!(
                "arc ({u},{v}) has an endpoint outside 0..{}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
        }
        if self.has_arc(u, v) {
            return Err(Error::InvalidArgument(format!("duplicate arc ({u},{v})")));
        }
        self.adj[u * self.n + v] = true;
        Ok(())
    }

    /// Inserts `(u, v)`; returns `false` if it was already present.
    ///
    /// # Panics
    /// On a loop or an endpoint out of range.
    pub fn add_arc(&mut self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n && u != v, "invalid arc ({u},{v})");
        let slot = &mut self.adj[u * self.n + v];
        !std::mem::replace(slot, true)
    }

    pub fn remove_arc(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n {
            return false;
        }
        std::mem::replace(&mut self.adj[u * self.n + v], false)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.n + v]
    }

    pub fn arc_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count()
    }

    /// All arcs in lexicographic `(tail, head)` order.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        let n = self.n;
        (0..n * n).filter(move |&k| self.adj[k]).map(move |k| (k / n, k % n))
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.adj[u * self.n + v])
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.adj[u * self.n + v])
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_neighbors(u).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_neighbors(v).count()
    }

    /// Checks the semi-complete and tournament conditions.
    pub fn validate_semi_complete(&self) -> SemiCompleteReport {
        let mut tournament = true;
        // pairs are scanned by larger endpoint, nearest partner first
        for v in 1..self.n {
            for u in (0..v).rev() {
                match (self.has_arc(u, v), self.has_arc(v, u)) {
                    (false, false) => {
                        return SemiCompleteReport {
                            semi_complete: false,
                            tournament: false,
                            missing_pair: Some((u, v)),
                        }
                    }
                    (true, true) => tournament = false,
                    _ => {}
                }
            }
        }
        SemiCompleteReport {
            semi_complete: true,
            tournament,
            missing_pair: None,
        }
    }

    /// Unordered pairs `{u, v}` (reported as `u < v`) carrying arcs in both
    /// directions.
    pub fn symmetric_pairs(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_arc(u, v) && self.has_arc(v, u) {
                    out.insert((u, v));
                }
            }
        }
        out
    }

    pub fn is_symmetric_arc(&self, (u, v): Arc) -> bool {
        self.has_arc(u, v) && self.has_arc(v, u)
    }

    /// Parses the text format: `#` comment lines, a header `n m`, then `m`
    /// lines `u v`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut content = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = content
            .next()
            .ok_or_else(|| parse_err(1, "missing header line \"n m\""))?;
        let (n, m) = parse_pair(hline, header)?;
        let mut d = SimpleDigraph::empty(n);

        for k in 0..m {
            let (line, l) = content.next().ok_or_else(|| {
                parse_err(hline + k + 1, format!("expected {m} arc lines, found {k}"))
            })?;
            let (u, v) = parse_pair(line, l)?;
            if u >= n || v >= n {
                return Err(parse_err(
                    line,
                    format!("vertex index out of range (n = {n})"),
                ));
            }
            if u == v {
                return Err(parse_err(line, format!("loop arc at vertex {u}")));
            }
            if !d.add_arc(u, v) {
                return Err(parse_err(line, format!("duplicate arc ({u},{v})")));
            }
        }
        if let Some((line, _)) = content.next() {
            return Err(parse_err(line, format!("unexpected content after {m} arcs")));
        }
        Ok(d)
    }

    /// Canonical serialization: header, then arcs in lexicographic order,
    /// newline-terminated.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.arc_count());
        for (u, v) in self.arcs() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// The sub-digraph induced by `vertices`, relabelled to `0..k` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> SimpleDigraph {
        let k = vertices.len();
        let mut d = SimpleDigraph::empty(k);
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate() {
                if a != b && self.has_arc(u, v) {
                    d.adj[a * k + b] = true;
                }
            }
        }
        d
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> SimpleDigraph {
        assert_eq!(perm.len(), self.n);
        let mut d = SimpleDigraph::empty(self.n);
        for (u, v) in self.arcs() {
            d.adj[perm[u] * self.n + perm[v]] = true;
        }
        d
    }
}

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize)> {
    let mut it = l.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| parse_err(line, format!("missing {what}")))?;
        tok.parse()
            .map_err(|_| parse_err(line, format!("malformed {what} {tok:?}")))
    };
    let a = next("first integer")?;
    let b = next("second integer")?;
    if it.next().is_some() {
        return Err(parse_err(line, "expected exactly two integers"));
    }
    Ok((a, b))
}

impl FromStr for SimpleDigraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SimpleDigraph::parse(s)
    }
}

impl fmt::Display for SimpleDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for SimpleDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleDigraph(n={}, arcs={:?})", self.n, self.arcs().collect::<Vec<_>>())
    }
}

/// Outcome of [`SimpleDigraph::validate_semi_complete`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SemiCompleteReport {
    pub semi_complete: bool,
    pub tournament: bool,
    /// A pair `u < v` with no arc in either direction.
    pub missing_pair: Option<(usize, usize)>,
}

/// A simple digraph with at least one arc between every two vertices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SemiCompleteDigraph(SimpleDigraph);

impl SemiCompleteDigraph {
    pub fn new(d: SimpleDigraph) -> Result<Self> {
        match d.validate_semi_complete().missing_pair {
            Some((u, v)) => Err(Error::NotSemiComplete(u, v)),
            None => Ok(SemiCompleteDigraph(d)),
        }
    }

    pub fn is_tournament(&self) -> bool {
        self.0.validate_semi_complete().tournament
    }

    pub fn as_simple(&self) -> &SimpleDigraph {
        &self.0
    }

    pub fn into_inner(self) -> SimpleDigraph {
        self.0
    }

    pub fn relabel(&self, perm: &[usize]) -> SemiCompleteDigraph {
        SemiCompleteDigraph(self.0.relabel(perm))
    }
}

impl Deref for SemiCompleteDigraph {
    type Target = SimpleDigraph;

    fn deref(&self) -> &SimpleDigraph {
        &self.0
    }
}

impl TryFrom<SimpleDigraph> for SemiCompleteDigraph {
    type Error = Error;

    fn try_from(d: SimpleDigraph) -> Result<Self> {
        SemiCompleteDigraph::new(d)
    }
}

/// Split of `E(S)` into a tournament part and the surplus forward arcs of
/// symmetric pairs, relative to an ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcPartition {
    pub e1: BTreeSet<Arc>,
    pub e2: BTreeSet<Arc>,
    pub ordering: VertexOrdering,
}

impl ArcPartition {
    /// The tournament `(V, e1)`.
    pub fn tournament(&self) -> SimpleDigraph {
        SimpleDigraph::from_arcs(self.ordering.len(), self.e1.iter().copied())
            .expect("partition arcs come from a simple digraph")
    }
}

/// Asymmetric arcs go to `e1`; of each symmetric pair the backward arc goes
/// to `e1` and the forward arc to `e2`.
pub fn partition_arcs(s: &SemiCompleteDigraph, pi: &VertexOrdering) -> ArcPartition {
    assert_eq!(pi.len(), s.n(), "ordering does not match the digraph");
    let mut e1 = BTreeSet::new();
    let mut e2 = BTreeSet::new();
    for (u, v) in s.arcs() {
        if !s.has_arc(v, u) || pi.position(u) > pi.position(v) {
            e1.insert((u, v));
        } else {
            e2.insert((u, v));
        }
    }
    ArcPartition {
        e1,
        e2,
        ordering: pi.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_symmetric_pair() {
        let d = SimpleDigraph::parse("2 2\n0 1\n1 0").unwrap();
        assert_eq!(d.n(), 2);
        assert!(d.has_arc(0, 1) && d.has_arc(1, 0));
        assert_eq!(d.symmetric_pairs().len(), 1);
    }

    #[test]
    fn parses_single_vertex() {
        let d = SimpleDigraph::parse("1 0").unwrap();
        assert_eq!((d.n(), d.arc_count()), (1, 0));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("2 2\n0 1\n0 1", 3, "duplicate"),
            ("# c\n2 1\n0 2\n", 3, "out of range"),
            ("2 1\n1 1\n", 2, "loop"),
            ("2 1\n0 x\n", 2, "malformed"),
            ("2 2\n0 1\n", 3, "expected 2 arc lines"),
            ("2 1\n0 1\n1 0\n", 3, "unexpected"),
        ];
        for (text, line, needle) in cases {
            match SimpleDigraph::parse(text) {
                Err(Error::Parse { line: l, msg }) => {
                    assert_eq!(l, line, "{text:?}");
                    assert!(msg.contains(needle), "{msg}");
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn serialization_is_canonical() {
        let d = SimpleDigraph::parse("# hello\n3 3\n2 0\n0 1\n1 2\n").unwrap();
        assert_eq!(d.to_text(), "3 3\n0 1\n1 2\n2 0\n");
        assert_eq!(SimpleDigraph::parse(&d.to_text()).unwrap(), d);
    }

    #[test]
    fn validation_cases() {
        let cycle = SimpleDigraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let r = cycle.validate_semi_complete();
        assert!(r.semi_complete && r.tournament);

        let pair = SimpleDigraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        let r = pair.validate_semi_complete();
        assert!(r.semi_complete && !r.tournament);

        let partial = SimpleDigraph::from_arcs(3, [(0, 1), (1, 0)]).unwrap();
        let r = partial.validate_semi_complete();
        assert!(!r.semi_complete && !r.tournament);
        assert_eq!(r.missing_pair, Some((1, 2)));
    }

    #[test]
    fn symmetric_pair_sets() {
        let t = SimpleDigraph::from_arcs(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(t.symmetric_pairs().is_empty());
        let k3 = complete_symmetric(3);
        assert_eq!(
            k3.symmetric_pairs().into_iter().collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (1, 2)]
        );
    }

    fn complete_symmetric(n: usize) -> SimpleDigraph {
        let mut d = SimpleDigraph::empty(n);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    d.add_arc(u, v);
                }
            }
        }
        d
    }

    #[test]
    fn partition_examples() {
        let pair = SemiCompleteDigraph::new(SimpleDigraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap())
            .unwrap();
        let p = partition_arcs(&pair, &VertexOrdering::identity(2));
        assert_eq!(p.e1.iter().copied().collect::<Vec<_>>(), vec![(1, 0)]);
        assert_eq!(p.e2.iter().copied().collect::<Vec<_>>(), vec![(0, 1)]);

        let k3 = SemiCompleteDigraph::new(complete_symmetric(3)).unwrap();
        let p = partition_arcs(&k3, &VertexOrdering::identity(3));
        assert_eq!(
            p.e1.iter().copied().collect::<Vec<_>>(),
            vec![(1, 0), (2, 0), (2, 1)]
        );
        assert_eq!(
            p.e2.iter().copied().collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (1, 2)]
        );
        assert!(p.tournament().validate_semi_complete().tournament);

        let t = SemiCompleteDigraph::new(
            SimpleDigraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap(),
        )
        .unwrap();
        let p = partition_arcs(&t, &VertexOrdering::identity(3));
        assert!(p.e2.is_empty());
        assert_eq!(p.e1.len(), 3);
    }
}

//! Codewords: a layout of bounded width written as a word over a finite
//! alphabet of labels, plus the gap values between consecutive letters.
//!
//! The letter at position `i` describes the consecutive ordered cuts
//! `(ε^{i-1}, ε^i)`: their sizes, which positions carry the same arc, which
//! arcs have a reverse arc in the digraph, and `i mod (4c + 1)`. The gap
//! after position `j` is `|E^j|`; the two boundary cuts are always empty and
//! are not stored.

mod domination;
mod interval;

use std::fmt;

pub use domination::{
    check_embedding, dominates, dominates_bruteforce, Embedding, DOMINATION_BRUTEFORCE_LIMIT,
};
pub use interval::interval_isomorphism;

use crate::digraph::{Arc, SimpleDigraph};
use crate::error::{parse_err, Error, Result};
use crate::ordering::{cut_sequence, OrderedCutSequence, VertexOrdering};

/// Which positions of two consecutive ordered cuts hold the same arc.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProfileClass {
    pub s1: usize,
    pub s2: usize,
    /// Sorted 1-based position pairs `(p, q)` with `ε^{i-1}(p) = ε^i(q)`.
    pub matches: Vec<(usize, usize)>,
}

impl ProfileClass {
    /// The profile of two consecutive ordered cuts.
    pub fn of(prev: &[Arc], next: &[Arc]) -> Self {
        let matches = prev
            .iter()
            .enumerate()
            .filter_map(|(p, a)| next.iter().position(|b| b == a).map(|q| (p + 1, q + 1)))
            .collect();
        ProfileClass {
            s1: prev.len(),
            s2: next.len(),
            matches,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub profile: ProfileClass,
    /// Per position of `ε^{i-1}`: does the reverse arc exist?
    pub sym_prev: Vec<bool>,
    /// Per position of `ε^i`.
    pub sym_next: Vec<bool>,
    pub tag: usize,
}

impl Label {
    /// Whether the label belongs to the finite label set for bound `c`.
    pub fn is_well_formed(&self, c: usize) -> bool {
        let p = &self.profile;
        if p.s1 > c || p.s2 > c || self.tag > 4 * c {
            return false;
        }
        if self.sym_prev.len() != p.s1 || self.sym_next.len() != p.s2 {
            return false;
        }
        let mut seen_p = vec![false; p.s1 + 1];
        let mut seen_q = vec![false; p.s2 + 1];
        for &(a, b) in &p.matches {
            if a == 0 || b == 0 || a > p.s1 || b > p.s2 || seen_p[a] || seen_q[b] {
                return false;
            }
            seen_p[a] = true;
            seen_q[b] = true;
            if self.sym_prev[a - 1] != self.sym_next[b - 1] {
                return false;
            }
        }
        p.matches.windows(2).all(|w| w[0] < w[1])
    }

    fn to_text(&self) -> String {
        let matches: Vec<String> = self
            .profile
            .matches
            .iter()
            .map(|(p, q)| format!("{p}-{q}"))
            .collect();
        format!(
            "profile=({},{};[{}]) sym_prev={} sym_next={} tag={}",
            self.profile.s1,
            self.profile.s2,
            matches.join(","),
            bits(&self.sym_prev),
            bits(&self.sym_next),
            self.tag
        )
    }
}

fn bits(flags: &[bool]) -> String {
    if flags.is_empty() {
        "-".to_string()
    } else {
        flags.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

fn parse_bits(s: &str) -> Option<Vec<bool>> {
    if s == "-" {
        return Some(Vec::new());
    }
    s.chars()
        .map(|ch| match ch {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

/// An `(L, c)`-codeword `(n, λ, ζ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    pub n: usize,
    /// `labels[i - 1]` is `λ(i)`.
    pub labels: Vec<Label>,
    /// `zeta[j - 1]` is `ζ(j)` for `j` in `1..n`.
    pub zeta: Vec<usize>,
    pub c: usize,
}

impl Codeword {
    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i - 1]
    }

    pub fn zeta(&self, j: usize) -> usize {
        self.zeta[j - 1]
    }

    /// Checks the structural invariants of a codeword under its bound.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.labels.len() != self.n || self.zeta.len() != self.n - 1 {
            return Err(Error::InvalidArgument(format!(
                "codeword of length {} has {} labels and {} gaps",
                self.n,
                self.labels.len(),
                self.zeta.len()
            )));
        }
        if let Some(z) = self.zeta.iter().find(|&&z| z > self.c) {
            return Err(Error::InvalidArgument(format!(
                "gap value {z} exceeds c = {}",
                self.c
            )));
        }
        if let Some(i) = self.labels.iter().position(|l| !l.is_well_formed(self.c)) {
            return Err(Error::InvalidArgument(format!(
                "label {} is not well formed for c = {}",
                i + 1,
                self.c
            )));
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("codeword n={} c={}\n", self.n, self.c);
        for (k, l) in self.labels.iter().enumerate() {
            s.push_str(&format!("{}: {}\n", k + 1, l.to_text()));
        }
        s.push_str("zeta:");
        for z in &self.zeta {
            s.push_str(&format!(" {z}"));
        }
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing codeword header"))?;
        let mut it = header.split_whitespace();
        if it.next() != Some("codeword") {
            return Err(parse_err(hl, "expected \"codeword n=<n> c=<c>\""));
        }
        let n = key_value(hl, it.next(), "n")?;
        let c = key_value(hl, it.next(), "c")?;

        let mut labels = Vec::with_capacity(n);
        for k in 1..=n {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| parse_err(hl + k, format!("missing label line {k}")))?;
            let (idx, rest) = line
                .split_once(':')
                .ok_or_else(|| parse_err(ln, "expected \"i: profile=...\""))?;
            if idx.trim().parse::<usize>().ok() != Some(k) {
                return Err(parse_err(ln, format!("expected label index {k}")));
            }
            labels.push(parse_label(ln, rest.trim())?);
        }
        let (zl, zline) = lines
            .next()
            .ok_or_else(|| parse_err(hl + n + 1, "missing zeta line"))?;
        let zrest = zline
            .strip_prefix("zeta:")
            .ok_or_else(|| parse_err(zl, "expected \"zeta: ...\""))?;
        let zeta = zrest
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err(zl, format!("malformed gap {t:?}"))))
            .collect::<Result<Vec<usize>>>()?;
        if let Some((l, _)) = lines.next() {
            return Err(parse_err(l, "unexpected content after zeta line"));
        }
        let cw = Codeword { n, labels, zeta, c };
        cw.validate().map_err(|e| parse_err(zl, e.to_string()))?;
        Ok(cw)
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn key_value(line: usize, tok: Option<&str>, key: &str) -> Result<usize> {
    tok.and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(line, format!("expected {key}=<int>")))
}

fn parse_label(line: usize, s: &str) -> Result<Label> {
    let bad = |what: &str| parse_err(line, format!("malformed {what}"));
    let mut fields = s.split_whitespace();
    let profile = fields
        .next()
        .and_then(|t| t.strip_prefix("profile=("))
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| bad("profile"))?;
    let (sizes, matches) = profile.split_once(';').ok_or_else(|| bad("profile"))?;
    let (s1, s2) = sizes.split_once(',').ok_or_else(|| bad("profile sizes"))?;
    let s1 = s1.parse().map_err(|_| bad("profile sizes"))?;
    let s2 = s2.parse().map_err(|_| bad("profile sizes"))?;
    let inner = matches
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| bad("profile matches"))?;
    let matches = if inner.is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|m| {
                let (p, q) = m.split_once('-')?;
                Some((p.parse().ok()?, q.parse().ok()?))
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad("profile matches"))?
    };
    let mut field = |key: &str| {
        fields
            .next()
            .and_then(|t| t.strip_prefix(key))
            .and_then(|t| t.strip_prefix('='))
            .ok_or_else(|| bad(key))
    };
    let sym_prev = parse_bits(field("sym_prev")?).ok_or_else(|| bad("sym_prev"))?;
    let sym_next = parse_bits(field("sym_next")?).ok_or_else(|| bad("sym_next"))?;
    let tag = field("tag")?.parse().map_err(|_| bad("tag"))?;
    Ok(Label {
        profile: ProfileClass { s1, s2, matches },
        sym_prev,
        sym_next,
        tag,
    })
}

/// Encodes `d` with ordering `pi` and ordered cuts `sigma` under bound `c`.
pub fn encode(
    d: &SimpleDigraph,
    pi: &VertexOrdering,
    sigma: &OrderedCutSequence,
    c: usize,
) -> Result<Codeword> {
    let n = d.n();
    if n == 0 {
        return Err(Error::InvalidArgument("cannot encode the empty digraph".into()));
    }
    let cuts = cut_sequence(d, pi);
    let width = cuts.width();
    if width > c {
        return Err(Error::WidthExceeded { width, c });
    }
    sigma.validate(&cuts)?;
    let modulus = 4 * c + 1;
    let labels = (1..=n)
        .map(|i| {
            let (prev, next) = (&sigma.cuts[i - 1], &sigma.cuts[i]);
            Label {
                profile: ProfileClass::of(prev, next),
                sym_prev: prev.iter().map(|&a| d.is_symmetric_arc(a)).collect(),
                sym_next: next.iter().map(|&a| d.is_symmetric_arc(a)).collect(),
                tag: i % modulus,
            }
        })
        .collect();
    let zeta = (1..n).map(|j| cuts.size(j)).collect();
    Ok(Codeword { n, labels, zeta, c })
}

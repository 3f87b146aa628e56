use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::digraph::{Arc, SimpleDigraph};
use crate::error::{parse_err, Result};
use crate::ordering::parse_arc;

/// A strong immersion of `H` in `D`: an injective vertex map and, per arc of
/// `H`, a directed path of `D` between the images of its ends.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StrongImmersionModel {
    /// `vmap[u]` is the image of vertex `u` of `H`.
    pub vmap: Vec<usize>,
    /// Vertex sequence of the path of each arc of `H`.
    pub pmap: BTreeMap<Arc, Vec<usize>>,
}

/// The first condition a model breaks, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImmersionViolation {
    /// Clause 1: the vertex map has the wrong length or leaves `D`.
    VertexMap(String),
    /// Clause 1: two vertices of `H` share an image.
    NotInjective { vertices: (usize, usize), image: usize },
    /// Clause 2: an arc of `H` has no path, or its path is not a directed
    /// path between the right images.
    BadPath { arc: Arc, reason: String },
    /// Clause 3: two paths share an arc of `D`.
    SharedArc { arcs: (Arc, Arc), host_arc: Arc },
    /// Clause 4: the path of `arc` visits the image of a vertex not
    /// incident to it.
    ThroughImage { arc: Arc, vertex: usize, image: usize },
}

impl ImmersionViolation {
    /// Which of the four conditions is violated.
    pub fn clause(&self) -> u8 {
        match self {
            ImmersionViolation::VertexMap(_) | ImmersionViolation::NotInjective { .. } => 1,
            ImmersionViolation::BadPath { .. } => 2,
            ImmersionViolation::SharedArc { .. } => 3,
            ImmersionViolation::ThroughImage { .. } => 4,
        }
    }
}

impl fmt::Display for ImmersionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "clause {}: ", self.clause())?;
        match self {
            ImmersionViolation::VertexMap(msg) => write!(f, "{msg}"),
            ImmersionViolation::NotInjective { vertices, image } => write!(
                f,
                "vertices {} and {} both map to {image}",
                vertices.0, vertices.1
            ),
            ImmersionViolation::BadPath { arc, reason } => {
                write!(f, "path of ({},{}) {reason}", arc.0, arc.1)
            }
            ImmersionViolation::SharedArc { arcs, host_arc } => write!(
                f,
                "paths of ({},{}) and ({},{}) share the arc ({},{})",
                arcs.0 .0, arcs.0 .1, arcs.1 .0, arcs.1 .1, host_arc.0, host_arc.1
            ),
            ImmersionViolation::ThroughImage { arc, vertex, image } => write!(
                f,
                "path of ({},{}) passes through {image}, the image of {vertex}",
                arc.0, arc.1
            ),
        }
    }
}

impl std::error::Error for ImmersionViolation {}

/// Checks the four conditions of a strong immersion model of `h` in `d`.
pub fn verify_strong_immersion(
    h: &SimpleDigraph,
    d: &SimpleDigraph,
    m: &StrongImmersionModel,
) -> Result<(), ImmersionViolation> {
    if m.vmap.len() != h.n() {
        return Err(ImmersionViolation::VertexMap(format!(
            "vertex map has {} entries for {} vertices",
            m.vmap.len(),
            h.n()
        )));
    }
    let mut preimage: Vec<Option<usize>> = vec![None; d.n()];
    for (u, &x) in m.vmap.iter().enumerate() {
        if x >= d.n() {
            return Err(ImmersionViolation::VertexMap(format!(
                "vertex {u} maps to {x}, outside the host"
            )));
        }
        if let Some(w) = preimage[x] {
            return Err(ImmersionViolation::NotInjective {
                vertices: (w, u),
                image: x,
            });
        }
        preimage[x] = Some(u);
    }

    for arc in h.arcs() {
        let Some(path) = m.pmap.get(&arc) else {
            return Err(ImmersionViolation::BadPath {
                arc,
                reason: "is missing".into(),
            });
        };
        let bad = |reason: String| ImmersionViolation::BadPath { arc, reason };
        if path.len() < 2 {
            return Err(bad("has no arcs".into()));
        }
        if path[0] != m.vmap[arc.0] || path[path.len() - 1] != m.vmap[arc.1] {
            return Err(bad(format!(
                "runs from {} to {} instead of {} to {}",
                path[0],
                path[path.len() - 1],
                m.vmap[arc.0],
                m.vmap[arc.1]
            )));
        }
        let mut seen = vec![false; d.n()];
        for &x in path {
            if x >= d.n() {
                return Err(bad(format!("leaves the host at {x}")));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(bad(format!("repeats the vertex {x}")));
            }
        }
        if let Some(w) = path.windows(2).find(|w| !d.has_arc(w[0], w[1])) {
            return Err(bad(format!("uses the non-arc ({},{})", w[0], w[1])));
        }
    }
    if let Some(&arc) = m.pmap.keys().find(|&&(u, v)| u >= h.n() || v >= h.n() || !h.has_arc(u, v)) {
        return Err(ImmersionViolation::BadPath {
            arc,
            reason: "belongs to no arc of the pattern".into(),
        });
    }

    let mut owner: HashMap<Arc, Arc> = HashMap::new();
    for (&arc, path) in &m.pmap {
        for w in path.windows(2) {
            if let Some(&other) = owner.get(&(w[0], w[1])) {
                return Err(ImmersionViolation::SharedArc {
                    arcs: (other, arc),
                    host_arc: (w[0], w[1]),
                });
            }
            owner.insert((w[0], w[1]), arc);
        }
    }

    for (&arc, path) in &m.pmap {
        for &x in path {
            if let Some(w) = preimage[x] {
                if w != arc.0 && w != arc.1 {
                    return Err(ImmersionViolation::ThroughImage {
                        arc,
                        vertex: w,
                        image: x,
                    });
                }
            }
        }
    }
    Ok(())
}

impl StrongImmersionModel {
    /// Every vertex and arc of `d` mapped to itself.
    pub fn identity(d: &SimpleDigraph) -> Self {
        StrongImmersionModel {
            vmap: (0..d.n()).collect(),
            pmap: d.arcs().map(|(u, v)| ((u, v), vec![u, v])).collect(),
        }
    }

    /// Host arcs used by all paths.
    pub fn used_arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.pmap
            .values()
            .flat_map(|p| p.windows(2).map(|w| (w[0], w[1])))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("vmap:\n");
        for (u, x) in self.vmap.iter().enumerate() {
            s.push_str(&format!("{u} -> {x}\n"));
        }
        s.push_str("pmap:\n");
        for ((u, v), path) in &self.pmap {
            let verts: Vec<String> = path.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("({u},{v}): {}\n", verts.join(" ")));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut m = StrongImmersionModel::default();
        let mut section = None;
        for (k, raw) in text.lines().enumerate() {
            let ln = k + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match line {
                "vmap:" => {
                    section = Some(false);
                    continue;
                }
                "pmap:" => {
                    section = Some(true);
                    continue;
                }
                _ => {}
            }
            match section {
                None => return Err(parse_err(ln, "expected \"vmap:\"")),
                Some(false) => {
                    let (u, x) = line
                        .split_once("->")
                        .ok_or_else(|| parse_err(ln, "expected \"u -> x\""))?;
                    let u: usize = u.trim().parse().map_err(|_| parse_err(ln, "malformed vertex"))?;
                    let x: usize = x.trim().parse().map_err(|_| parse_err(ln, "malformed vertex"))?;
                    if u != m.vmap.len() {
                        return Err(parse_err(ln, format!("expected vertex {}", m.vmap.len())));
                    }
                    m.vmap.push(x);
                }
                Some(true) => {
                    let (arc, rest) = line
                        .split_once(':')
                        .ok_or_else(|| parse_err(ln, "expected \"(u,v): path\""))?;
                    let arc = parse_arc(arc.trim()).ok_or_else(|| parse_err(ln, "malformed arc"))?;
                    let path = rest
                        .split_whitespace()
                        .map(|t| t.parse().map_err(|_| parse_err(ln, format!("malformed vertex {t:?}"))))
                        .collect::<Result<Vec<usize>>>()?;
                    if m.pmap.insert(arc, path).is_some() {
                        return Err(parse_err(ln, "duplicate arc"));
                    }
                }
            }
        }
        if section.is_none() {
            return Err(parse_err(1, "empty model"));
        }
        Ok(m)
    }
}

impl fmt::Display for StrongImmersionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

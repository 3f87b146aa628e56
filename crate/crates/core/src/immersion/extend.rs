use std::collections::HashSet;
use std::fmt::Write as _;

use crate::codec::{check_embedding, encode, interval_isomorphism, Embedding};
use crate::digraph::{Arc, ArcPartition, SemiCompleteDigraph};
use crate::error::{Error, Result};
use crate::ordering::{OrderedCutSequence, VertexOrdering};

use super::model::{verify_strong_immersion, StrongImmersionModel};
use super::tournament::StitchRecord;

/// A surplus arc whose ends land on consecutive host positions, routed
/// along the single host arc between their images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F1Record {
    pub arc: Arc,
    pub j: usize,
    pub h: usize,
    pub host_arc: Arc,
}

/// A surplus arc whose images are far apart, routed through a pivot.
///
/// Positions are 1-based. Counts refer to unmapped host vertices strictly
/// between positions `f(j)` and `f(h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Record {
    pub arc: Arc,
    pub j: usize,
    pub h: usize,
    pub fj: usize,
    pub fh: usize,
    /// `f(h) - f(j)`.
    pub gap: usize,
    /// `h - j`.
    pub span: usize,
    pub unmapped: usize,
    /// Unmapped vertices `x` without the arc `(π'_{f(j)}, x)`.
    pub excluded_tail: usize,
    /// Unmapped vertices `x` without the arc `(x, π'_{f(h)})`.
    pub excluded_head: usize,
    /// Positions of unmapped vertices with both arcs.
    pub candidates: Vec<usize>,
    /// Candidates whose arc from `π'_{f(j)}` was already used.
    pub consumed_tail: usize,
    /// Candidates whose arc to `π'_{f(h)}` was already used.
    pub consumed_head: usize,
    /// Candidates with both arcs still unused.
    pub remaining: usize,
    pub pivot_position: usize,
    pub pivot: usize,
}

/// Everything the reconstruction decided, one record per arc.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReconstructionTrace {
    pub c: usize,
    pub e1: Vec<Arc>,
    pub e2: Vec<Arc>,
    pub stitches: Vec<StitchRecord>,
    pub tournament_fallback: bool,
    pub f1: Vec<F1Record>,
    pub f2: Vec<F2Record>,
}

impl F2Record {
    /// The counting bounds every pivot choice must satisfy under bound `c`.
    pub fn check(&self, c: usize) -> std::result::Result<(), String> {
        let m = 4 * c + 1;
        let checks = [
            (self.gap % m == self.span % m, "gap and span differ modulo 4c+1"),
            (self.gap >= self.span + m, "gap below span + 4c + 1"),
            (self.unmapped >= m, "fewer than 4c + 1 unmapped vertices"),
            (self.excluded_tail <= c, "more than c tail exclusions"),
            (self.excluded_head <= c, "more than c head exclusions"),
            (self.candidates.len() > 2 * c, "fewer than 2c + 1 candidates"),
            (self.consumed_tail <= c, "more than c consumed tail arcs"),
            (self.consumed_head <= c, "more than c consumed head arcs"),
            (self.remaining >= 1, "no pivot remains"),
        ];
        match checks.iter().find(|(ok, _)| !ok) {
            Some((_, msg)) => Err(format!(
                "arc ({},{}): {msg}",
                self.arc.0, self.arc.1
            )),
            None => Ok(()),
        }
    }
}

impl ReconstructionTrace {
    /// Checks every F2 record and the F1/F2 split.
    pub fn check(&self) -> std::result::Result<(), String> {
        if self.f1.len() + self.f2.len() != self.e2.len() {
            return Err("F1 and F2 do not cover E2".into());
        }
        for r in &self.f1 {
            if !self.e2.contains(&r.arc) {
                return Err(format!("F1 arc ({},{}) is not in E2", r.arc.0, r.arc.1));
            }
        }
        for r in &self.f2 {
            if !self.e2.contains(&r.arc) {
                return Err(format!("F2 arc ({},{}) is not in E2", r.arc.0, r.arc.1));
            }
            r.check(self.c)?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let arcs = |v: &[Arc]| {
            v.iter()
                .map(|(u, w)| format!("({u},{w})"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let verts = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let mut s = String::new();
        let _ = writeln!(s, "trace c={}", self.c);
        let _ = writeln!(s, "e1: {}", arcs(&self.e1));
        let _ = writeln!(s, "e2: {}", arcs(&self.e2));
        let _ = writeln!(s, "tournament_fallback: {}", self.tournament_fallback);
        for r in &self.stitches {
            let segs = r
                .segments
                .iter()
                .map(|g| format!("{}@{}:{}-{}", g.cut, g.position, g.host_from, g.host_to))
                .collect::<Vec<_>>()
                .join(",");
            let _ = writeln!(
                s,
                "stitch ({},{}) feedback={} segments=[{}] path={}",
                r.arc.0,
                r.arc.1,
                r.feedback,
                segs,
                verts(&r.path)
            );
        }
        for r in &self.f1 {
            let _ = writeln!(
                s,
                "f1 ({},{}) j={} h={} host=({},{})",
                r.arc.0, r.arc.1, r.j, r.h, r.host_arc.0, r.host_arc.1
            );
        }
        for r in &self.f2 {
            let _ = writeln!(
                s,
                "f2 ({},{}) j={} h={} fj={} fh={} gap={} span={} unmapped={} \
                 excluded_tail={} excluded_head={} candidates=[{}] consumed_tail={} \
                 consumed_head={} remaining={} pivot_position={} pivot={}",
                r.arc.0,
                r.arc.1,
                r.j,
                r.h,
                r.fj,
                r.fh,
                r.gap,
                r.span,
                r.unmapped,
                r.excluded_tail,
                r.excluded_head,
                verts(&r.candidates),
                r.consumed_tail,
                r.consumed_head,
                r.remaining,
                r.pivot_position,
                r.pivot
            );
        }
        s
    }
}

/// Extends the tournament model `base` of `(V, E1)` to all of `s`.
///
/// Surplus arcs `(π_j, π_h)`, `j < h`, with `f(h) - f(j) = h - j` sit in an
/// interval copied verbatim into the host, so the host arc between their
/// images exists and is unused. The others are processed in `(j, h)` order
/// and routed as 2-paths through the unmapped host vertex of smallest
/// position in the gap whose two arcs are present and unused.
#[allow(clippy::too_many_arguments)]
pub fn extend_immersion_symmetric(
    s: &SemiCompleteDigraph,
    pi: &VertexOrdering,
    sigma: &OrderedCutSequence,
    s2: &SemiCompleteDigraph,
    pi2: &VertexOrdering,
    sigma2: &OrderedCutSequence,
    f: &Embedding,
    c: usize,
    base: &StrongImmersionModel,
    part: &ArcPartition,
) -> Result<(StrongImmersionModel, ReconstructionTrace)> {
    let cw = encode(s, pi, sigma, c)?;
    let cw2 = encode(s2, pi2, sigma2, c)?;
    if !check_embedding(&cw, &cw2, f) {
        return Err(Error::InvalidArgument(
            "embedding does not witness domination of the codewords".into(),
        ));
    }
    if &part.ordering != pi {
        return Err(Error::InvalidArgument("partition uses another ordering".into()));
    }
    let t = part.tournament();
    verify_strong_immersion(&t, s2, base)
        .map_err(|v| Error::InvalidArgument(format!("base model is invalid: {v}")))?;
    for j in 1..=pi.len() {
        if base.vmap[pi.vertex_at(j)] != pi2.vertex_at(f.at(j)) {
            return Err(Error::InvalidArgument(format!(
                "base model does not send position {j} to {}",
                f.at(j)
            )));
        }
    }

    let mut model = base.clone();
    let mut used: HashSet<Arc> = base.used_arcs().collect();
    let mut mapped = vec![false; pi2.len() + 1];
    for j in 1..=pi.len() {
        mapped[f.at(j)] = true;
    }
    let mut trace = ReconstructionTrace {
        c,
        e1: part.e1.iter().copied().collect(),
        e2: part.e2.iter().copied().collect(),
        ..Default::default()
    };

    let mut e2: Vec<(usize, usize, Arc)> = part
        .e2
        .iter()
        .map(|&(u, v)| (pi.position(u) + 1, pi.position(v) + 1, (u, v)))
        .collect();
    e2.sort_unstable();

    let fail = |trace: &ReconstructionTrace, msg: String| {
        Error::Internal(format!("{msg}\n{}", trace.to_text()))
    };

    for &(j, h, arc) in &e2 {
        if j >= h {
            return Err(fail(&trace, format!("surplus arc ({},{}) is not forward", arc.0, arc.1)));
        }
        let (fj, fh) = (f.at(j), f.at(h));
        let (a, b) = (model.vmap[arc.0], model.vmap[arc.1]);
        if fh - fj == h - j {
            interval_isomorphism(s, pi, s2, pi2, j, h, f)?;
            if !s2.has_arc(a, b) || !used.insert((a, b)) {
                return Err(fail(&trace, format!("host arc ({a},{b}) is missing or used")));
            }
            model.pmap.insert(arc, vec![a, b]);
            trace.f1.push(F1Record {
                arc,
                j,
                h,
                host_arc: (a, b),
            });
            continue;
        }

        let unmapped: Vec<usize> = (fj + 1..fh).filter(|&i| !mapped[i]).collect();
        let mut excluded_tail = 0;
        let mut excluded_head = 0;
        let mut candidates = Vec::new();
        for &i in &unmapped {
            let x = pi2.vertex_at(i);
            let has_tail = s2.has_arc(a, x);
            let has_head = s2.has_arc(x, b);
            excluded_tail += usize::from(!has_tail);
            excluded_head += usize::from(!has_head);
            if has_tail && has_head {
                candidates.push(i);
            }
        }
        let mut consumed_tail = 0;
        let mut consumed_head = 0;
        let mut free = Vec::new();
        for &i in &candidates {
            let x = pi2.vertex_at(i);
            let tail_used = used.contains(&(a, x));
            let head_used = used.contains(&(x, b));
            consumed_tail += usize::from(tail_used);
            consumed_head += usize::from(head_used);
            if !tail_used && !head_used {
                free.push(i);
            }
        }
        let pivot_position = free.first().copied().unwrap_or(0);
        let record = F2Record {
            arc,
            j,
            h,
            fj,
            fh,
            gap: fh - fj,
            span: h - j,
            unmapped: unmapped.len(),
            excluded_tail,
            excluded_head,
            candidates,
            consumed_tail,
            consumed_head,
            remaining: free.len(),
            pivot_position,
            pivot: if pivot_position == 0 { 0 } else { pi2.vertex_at(pivot_position) },
        };
        let verdict = record.check(c);
        trace.f2.push(record);
        if let Err(msg) = verdict {
            return Err(fail(&trace, msg));
        }
        let x = pi2.vertex_at(pivot_position);
        used.insert((a, x));
        used.insert((x, b));
        model.pmap.insert(arc, vec![a, x, b]);
    }

    verify_strong_immersion(s, s2, &model)
        .map_err(|v| fail(&trace, format!("extended model rejected: {v}")))?;
    trace.check().map_err(|msg| fail(&trace, msg))?;
    Ok((model, trace))
}

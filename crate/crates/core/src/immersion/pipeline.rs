use crate::codec::{dominates, encode, Codeword, Embedding};
use crate::cutwidth::DEFAULT_EXACT_LIMIT;
use crate::digraph::{partition_arcs, SemiCompleteDigraph};
use crate::error::{Error, Result};
use crate::linked::{build_linked_ordered_cuts, build_linked_ordering};
use crate::ordering::{cut_sequence, OrderedCutSequence, VertexOrdering};

use super::extend::{extend_immersion_symmetric, ReconstructionTrace};
use super::model::{verify_strong_immersion, StrongImmersionModel};
use super::tournament::reconstruct_tournament_immersion;

/// A linked ordering of optimal width with a linked sequence of ordered cuts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub ordering: VertexOrdering,
    pub ordered_cuts: OrderedCutSequence,
    pub ctw: usize,
}

impl Layout {
    pub fn build(s: &SemiCompleteDigraph) -> Result<Self> {
        let ordering = build_linked_ordering(s, DEFAULT_EXACT_LIMIT)?;
        let ordered_cuts = build_linked_ordered_cuts(s, &ordering)?;
        let ctw = cut_sequence(s, &ordering).width();
        Ok(Layout {
            ordering,
            ordered_cuts,
            ctw,
        })
    }
}

/// A semi-complete digraph with its layout and codeword under bound `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedDigraph {
    pub digraph: SemiCompleteDigraph,
    pub layout: Layout,
    pub codeword: Codeword,
}

impl EncodedDigraph {
    /// Fails with [`Error::WidthExceeded`] when `ctw(s) > c`.
    pub fn new(s: SemiCompleteDigraph, c: usize) -> Result<Self> {
        let layout = Layout::build(&s)?;
        if layout.ctw > c {
            return Err(Error::WidthExceeded {
                width: layout.ctw,
                c,
            });
        }
        let codeword = encode(&s, &layout.ordering, &layout.ordered_cuts, c)?;
        Ok(EncodedDigraph {
            digraph: s,
            layout,
            codeword,
        })
    }
}

/// A verified model together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImmersionOutcome {
    pub model: StrongImmersionModel,
    pub embedding: Embedding,
    pub trace: ReconstructionTrace,
    pub c: usize,
}

/// Builds a strong immersion of `a` in `b` if `a`'s codeword is dominated
/// by `b`'s. Absence of domination says nothing about absence of an
/// immersion.
pub fn immerse_encoded(a: &EncodedDigraph, b: &EncodedDigraph) -> Result<Option<ImmersionOutcome>> {
    let Some(f) = dominates(&a.codeword, &b.codeword)? else {
        return Ok(None);
    };
    let c = a.codeword.c;
    let (s, la) = (&a.digraph, &a.layout);
    let (s2, lb) = (&b.digraph, &b.layout);
    let part = partition_arcs(s, &la.ordering);
    let t = part.tournament();
    let base = reconstruct_tournament_immersion(
        &t,
        &la.ordering,
        &la.ordered_cuts,
        s2,
        &lb.ordering,
        &lb.ordered_cuts,
        &f,
    )?;
    let (model, mut trace) = extend_immersion_symmetric(
        s,
        &la.ordering,
        &la.ordered_cuts,
        s2,
        &lb.ordering,
        &lb.ordered_cuts,
        &f,
        c,
        &base.model,
        &part,
    )?;
    trace.stitches = base.stitches;
    trace.tournament_fallback = base.fallback;
    verify_strong_immersion(s, s2, &model)
        .map_err(|v| Error::Internal(format!("pipeline model rejected: {v}")))?;
    Ok(Some(ImmersionOutcome {
        model,
        embedding: f,
        trace,
        c,
    }))
}

/// Encodes both digraphs under `c` and runs [`immerse_encoded`].
pub fn immerse_via_codewords(
    s: &SemiCompleteDigraph,
    s2: &SemiCompleteDigraph,
    c: usize,
) -> Result<Option<ImmersionOutcome>> {
    let a = EncodedDigraph::new(s.clone(), c)?;
    let b = EncodedDigraph::new(s2.clone(), c)?;
    immerse_encoded(&a, &b)
}

/// First pair found by [`wqo_scan`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanHit {
    pub i: usize,
    pub j: usize,
    pub outcome: ImmersionOutcome,
}

/// Encodes every member once; errors name the offending index.
pub fn encode_all(seq: &[SemiCompleteDigraph], c: usize) -> Result<Vec<EncodedDigraph>> {
    seq.iter()
        .enumerate()
        .map(|(index, s)| {
            EncodedDigraph::new(s.clone(), c).map_err(|e| Error::Member {
                index,
                source: Box::new(e),
            })
        })
        .collect()
}

/// Scans pairs `i < j` in lexicographic order and returns the first where
/// member `i` is dominated by member `j`, with its verified model.
pub fn wqo_scan(seq: &[SemiCompleteDigraph], c: usize) -> Result<Option<ScanHit>> {
    let encoded = encode_all(seq, c)?;
    for i in 0..encoded.len() {
        for j in i + 1..encoded.len() {
            if let Some(outcome) = immerse_encoded(&encoded[i], &encoded[j])? {
                return Ok(Some(ScanHit { i, j, outcome }));
            }
        }
    }
    Ok(None)
}

/// The larger of the two exact cutwidths, the natural shared bound for a
/// pair.
pub fn default_bound(s: &SemiCompleteDigraph, s2: &SemiCompleteDigraph) -> Result<usize> {
    let a = crate::cutwidth::cutwidth_exact(s)?.ctw;
    let b = crate::cutwidth::cutwidth_exact(s2)?.ctw;
    Ok(a.max(b))
}

use crate::digraph::SimpleDigraph;
use crate::error::{Error, Result};
use crate::ordering::VertexOrdering;

use super::Embedding;

/// For `j <= h` with `f(j + l) = f(j) + l` on the whole interval, checks that
/// `π_{j+l} -> π'_{f(j)+l}` is an isomorphism between `s[π_j..=π_h]` and
/// `s'[π'_{f(j)}..=π'_{f(h)}]`, and returns it as `(vertex of s, vertex of s')`
/// pairs in position order.
///
/// Labels that agree along the interval force this isomorphism, so a failure
/// means the codewords did not describe these digraphs.
pub fn interval_isomorphism(
    s: &SimpleDigraph,
    pi: &VertexOrdering,
    s2: &SimpleDigraph,
    pi2: &VertexOrdering,
    j: usize,
    h: usize,
    f: &Embedding,
) -> Result<Vec<(usize, usize)>> {
    if j == 0 || j > h || h > pi.len() || f.len() != pi.len() {
        return Err(Error::InvalidArgument(format!(
            "interval [{j}, {h}] is not inside a layout of {} vertices",
            pi.len()
        )));
    }
    let base = f.at(j);
    if (j..=h).any(|p| f.at(p) != base + (p - j)) {
        return Err(Error::InvalidArgument(format!(
            "embedding is not consecutive on [{j}, {h}]"
        )));
    }
    if base + (h - j) > pi2.len() {
        return Err(Error::InvalidArgument("embedding leaves the target layout".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..=h - j)
        .map(|l| (pi.vertex_at(j + l), pi2.vertex_at(base + l)))
        .collect();
    for &(u, u2) in &pairs {
        for &(v, v2) in &pairs {
            if u != v && s.has_arc(u, v) != s2.has_arc(u2, v2) {
                return Err(Error::Internal(format!(
                    "interval [{j}, {h}] is not isomorphic to its image: \
                     ({u},{v}) vs ({u2},{v2})"
                )));
            }
        }
    }
    Ok(pairs)
}

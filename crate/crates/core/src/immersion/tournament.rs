use std::collections::HashMap;

use crate::codec::{Embedding, ProfileClass};
use crate::digraph::{Arc, SimpleDigraph};
use crate::error::{Error, Result};
use crate::flow::{endpoint_matched_paths, PathSystem};
use crate::ordering::{cut_sequence, OrderedCutSequence, VertexOrdering};

use super::model::{verify_strong_immersion, StrongImmersionModel};
use super::route::{Request, Router, Shape};

/// One host block crossed by the image of a feedback arc: the pattern arc
/// sits at `position` of cut `cut`, and the host path runs from cut
/// `host_to` back to cut `host_from` at that same position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StitchSegment {
    pub cut: usize,
    pub position: usize,
    pub host_from: usize,
    pub host_to: usize,
}

/// How one arc of the tournament was routed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StitchRecord {
    pub arc: Arc,
    pub feedback: bool,
    /// Crossed cuts from the tail side to the head side.
    pub segments: Vec<StitchSegment>,
    pub path: Vec<usize>,
}

/// Result of [`reconstruct_tournament_immersion`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TournamentReconstruction {
    pub model: StrongImmersionModel,
    pub stitches: Vec<StitchRecord>,
    /// Set when stitching failed and the constrained search produced the
    /// model instead.
    pub fallback: bool,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

/// Checks that `f` maps `(t, π, σ)` into `(s', π', σ')` at profile level:
/// profiles agree at `j` and `f(j)`, and every host cut between `f(j)` and
/// `f(j+1)` is at least as large as pattern cut `j`.
fn check_profile_domination(
    t: &SimpleDigraph,
    pi: &VertexOrdering,
    sigma: &OrderedCutSequence,
    s2: &SimpleDigraph,
    pi2: &VertexOrdering,
    sigma2: &OrderedCutSequence,
    f: &Embedding,
) -> Result<()> {
    let (n, n2) = (t.n(), s2.n());
    if pi.len() != n || pi2.len() != n2 {
        return Err(invalid("ordering length does not match its digraph"));
    }
    sigma.validate(&cut_sequence(t, pi))?;
    sigma2.validate(&cut_sequence(s2, pi2))?;
    if f.len() != n
        || f.f.iter().any(|&x| x == 0 || x > n2)
        || f.f.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(invalid("embedding is not strictly increasing into the host"));
    }
    for j in 1..=n {
        let (i, fj) = (j, f.at(j));
        if ProfileClass::of(&sigma.cuts[i - 1], &sigma.cuts[i])
            != ProfileClass::of(&sigma2.cuts[fj - 1], &sigma2.cuts[fj])
        {
            return Err(invalid(format!("profiles differ at {j} and {fj}")));
        }
        if j < n {
            let need = sigma.cuts[j].len();
            if (fj..f.at(j + 1)).any(|i| sigma2.cuts[i].len() < need) {
                return Err(invalid(format!("host cut too small after position {fj}")));
            }
        }
    }
    Ok(())
}

/// Checks a tournament model against its contract: it is a strong immersion,
/// `π_j` maps to `π'_{f(j)}`, forward arcs map to single arcs, and feedback
/// arcs map to paths whose first and last arcs are feedback arcs of `π'`.
pub fn check_tournament_contract(
    t: &SimpleDigraph,
    pi: &VertexOrdering,
    s2: &SimpleDigraph,
    pi2: &VertexOrdering,
    f: &Embedding,
    m: &StrongImmersionModel,
) -> std::result::Result<(), String> {
    verify_strong_immersion(t, s2, m).map_err(|v| v.to_string())?;
    for j in 1..=t.n() {
        if m.vmap[pi.vertex_at(j)] != pi2.vertex_at(f.at(j)) {
            return Err(format!("position {j} is not mapped to position {}", f.at(j)));
        }
    }
    for (&(u, v), path) in &m.pmap {
        let k = path.len();
        if pi.is_feedback((u, v)) {
            if !pi2.is_feedback((path[0], path[1])) || !pi2.is_feedback((path[k - 2], path[k - 1])) {
                return Err(format!("image of feedback arc ({u},{v}) has a forward end arc"));
            }
        } else if k != 2 {
            return Err(format!("image of forward arc ({u},{v}) has {} arcs", k - 1));
        }
    }
    Ok(())
}

/// A strong immersion of the tournament `t` in `s'` with `π_j ↦ π'_{f(j)}`,
/// given profile-level domination of the linked layouts.
///
/// A forward arc `(π_j, π_h)` becomes the host arc `(π'_{f(j)}, π'_{f(h)})`.
/// A feedback arc `(π_h, π_j)` crosses cuts `h-1` down to `j`; in cut `l` it
/// has some position `p_l`, and the host cuts `f(l)` and `f(l+1)-1` are
/// joined by an endpoint-matched path system of which path `p_l` is taken.
/// Consecutive segments share their junction arc, because equal profiles
/// carry the pattern arc's position from one cut to the next.
///
/// The result is checked; if the check fails, a backtracking search for any
/// model meeting the same contract is run instead.
pub fn reconstruct_tournament_immersion(
    t: &SimpleDigraph,
    pi: &VertexOrdering,
    sigma: &OrderedCutSequence,
    s2: &SimpleDigraph,
    pi2: &VertexOrdering,
    sigma2: &OrderedCutSequence,
    f: &Embedding,
) -> Result<TournamentReconstruction> {
    let report = t.validate_semi_complete();
    if !report.tournament {
        return Err(invalid("pattern is not a tournament"));
    }
    check_profile_domination(t, pi, sigma, s2, pi2, sigma2, f)?;

    let stitched = stitch(t, pi, sigma, s2, pi2, sigma2, f)
        .and_then(|(model, records)| {
            check_tournament_contract(t, pi, s2, pi2, f, &model).map(|()| (model, records))
        });
    match stitched {
        Ok((model, stitches)) => Ok(TournamentReconstruction {
            model,
            stitches,
            fallback: false,
        }),
        Err(reason) => {
            let model = constrained_search(t, pi, s2, pi2, f).ok_or_else(|| {
                Error::Internal(format!(
                    "stitching failed ({reason}) and no model meets the tournament contract"
                ))
            })?;
            check_tournament_contract(t, pi, s2, pi2, f, &model).map_err(Error::Internal)?;
            let stitches = model
                .pmap
                .iter()
                .map(|(&arc, path)| StitchRecord {
                    arc,
                    feedback: pi.is_feedback(arc),
                    segments: Vec::new(),
                    path: path.clone(),
                })
                .collect();
            Ok(TournamentReconstruction {
                model,
                stitches,
                fallback: true,
            })
        }
    }
}

fn image_map(pi: &VertexOrdering, pi2: &VertexOrdering, f: &Embedding) -> Vec<usize> {
    let mut vmap = vec![0; pi.len()];
    for j in 1..=pi.len() {
        vmap[pi.vertex_at(j)] = pi2.vertex_at(f.at(j));
    }
    vmap
}

type Stitched = (StrongImmersionModel, Vec<StitchRecord>);

fn stitch(
    t: &SimpleDigraph,
    pi: &VertexOrdering,
    sigma: &OrderedCutSequence,
    s2: &SimpleDigraph,
    pi2: &VertexOrdering,
    sigma2: &OrderedCutSequence,
    f: &Embedding,
) -> std::result::Result<Stitched, String> {
    let vmap = image_map(pi, pi2, f);
    let mut systems: HashMap<(usize, usize), Option<PathSystem>> = HashMap::new();
    let mut model = StrongImmersionModel {
        vmap: vmap.clone(),
        ..Default::default()
    };
    let mut records = Vec::new();

    for arc @ (u, v) in t.arcs() {
        let (pu, pv) = (pi.position(u) + 1, pi.position(v) + 1);
        if pu < pv {
            let path = vec![vmap[u], vmap[v]];
            if !s2.has_arc(path[0], path[1]) {
                return Err(format!("host lacks ({},{}) for forward arc ({u},{v})", path[0], path[1]));
            }
            records.push(StitchRecord {
                arc,
                feedback: false,
                segments: Vec::new(),
                path: path.clone(),
            });
            model.pmap.insert(arc, path);
            continue;
        }

        let (h, j) = (pu, pv);
        let mut path: Vec<usize> = Vec::new();
        let mut segments = Vec::new();
        for l in (j..h).rev() {
            let p = sigma
                .position_of(l, arc)
                .ok_or_else(|| format!("arc ({u},{v}) missing from ordered cut {l}"))?;
            let (a, b) = (f.at(l), f.at(l + 1) - 1);
            let seg = if a == b {
                let (x, y) = sigma2.arc(a, p);
                vec![x, y]
            } else {
                let system = systems.entry((a, b)).or_insert_with(|| {
                    endpoint_matched_paths(s2, pi2, a, b, &sigma2.cuts[a], &sigma2.cuts[b])
                });
                let system = system
                    .as_ref()
                    .ok_or_else(|| format!("host cuts {a} and {b} are not linked"))?;
                system.paths[p - 1].clone()
            };
            if path.is_empty() {
                path = seg;
            } else if path[path.len() - 2..] == seg[..2] {
                path.extend_from_slice(&seg[2..]);
            } else {
                return Err(format!("segments of ({u},{v}) do not share a junction arc at cut {l}"));
            }
            segments.push(StitchSegment {
                cut: l,
                position: p,
                host_from: a,
                host_to: b,
            });
        }
        records.push(StitchRecord {
            arc,
            feedback: true,
            segments,
            path: path.clone(),
        });
        model.pmap.insert(arc, path);
    }
    Ok((model, records))
}

/// Backtracking over all models with the fixed vertex map whose forward
/// arcs are single host arcs and whose feedback arcs start and end with
/// feedback arcs of `π'`.
pub(crate) fn constrained_search(
    t: &SimpleDigraph,
    pi: &VertexOrdering,
    s2: &SimpleDigraph,
    pi2: &VertexOrdering,
    f: &Embedding,
) -> Option<StrongImmersionModel> {
    let vmap = image_map(pi, pi2, f);
    let mut blocked = vec![false; s2.n()];
    for &x in &vmap {
        blocked[x] = true;
    }
    let mut arcs: Vec<Arc> = t.arcs().collect();
    // forced single arcs first
    arcs.sort_by_key(|&a| pi.is_feedback(a));
    let requests: Vec<Request> = arcs
        .iter()
        .map(|&(u, v)| Request {
            from: vmap[u],
            to: vmap[v],
            shape: if pi.is_feedback((u, v)) {
                Shape::FeedbackEnds
            } else {
                Shape::Direct
            },
        })
        .collect();
    let paths = Router::new(s2, blocked, Some(pi2)).route_all(&requests)?;
    Some(StrongImmersionModel {
        vmap,
        pmap: arcs.into_iter().zip(paths).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordering::cut_sequence;

    fn lex(d: &SimpleDigraph, pi: &VertexOrdering) -> OrderedCutSequence {
        OrderedCutSequence::lexicographic(&cut_sequence(d, pi))
    }

    #[test]
    fn identity_reconstruction() {
        let t = SimpleDigraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap();
        let pi = VertexOrdering::identity(4);
        let sigma = lex(&t, &pi);
        let f = Embedding { f: vec![1, 2, 3, 4] };
        let r = reconstruct_tournament_immersion(&t, &pi, &sigma, &t, &pi, &sigma, &f).unwrap();
        assert!(!r.fallback);
        assert_eq!(r.model, StrongImmersionModel::identity(&t));
    }

    #[test]
    fn three_cycle_into_a_longer_cycle_host() {
        // host: the transitive tournament on 5 vertices with the arc between
        // 0 and 4 reversed, so (4,0) is the only arc of cuts 1 to 4
        let t = SimpleDigraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let mut s2 = SimpleDigraph::empty(5);
        for u in 0..5 {
            for v in u + 1..5 {
                s2.add_arc(u, v);
            }
        }
        s2.remove_arc(0, 4);
        s2.add_arc(4, 0);
        let (pi, pi2) = (VertexOrdering::identity(3), VertexOrdering::identity(5));
        let f = Embedding { f: vec![1, 3, 5] };
        let r = reconstruct_tournament_immersion(&t, &pi, &lex(&t, &pi), &s2, &pi2, &lex(&s2, &pi2), &f)
            .unwrap();
        assert!(!r.fallback);
        assert_eq!(r.model.vmap, vec![0, 2, 4]);
        assert_eq!(r.model.pmap[&(2, 0)], vec![4, 0]);
        assert_eq!(check_tournament_contract(&t, &pi, &s2, &pi2, &f, &r.model), Ok(()));
    }

    #[test]
    fn constrained_search_matches_stitching_contract() {
        let t = SimpleDigraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let pi = VertexOrdering::identity(3);
        let f = Embedding { f: vec![1, 2, 3] };
        let m = constrained_search(&t, &pi, &t, &pi, &f).unwrap();
        assert_eq!(m, StrongImmersionModel::identity(&t));
    }

    #[test]
    fn profile_mismatch_is_rejected() {
        let t = SimpleDigraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let s2 = SimpleDigraph::from_arcs(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let pi = VertexOrdering::identity(3);
        let f = Embedding { f: vec![1, 2, 3] };
        assert!(matches!(
            reconstruct_tournament_immersion(&t, &pi, &lex(&t, &pi), &s2, &pi, &lex(&s2, &pi), &f),
            Err(Error::InvalidArgument(_))
        ));
    }
}

//! Domination on interval graphs: greedy minimum dominating sets that must
//! contain a prescribed vertex set, extremal dominating sets, and the
//! reachability predicate for connected interval graphs.

use std::cmp::Reverse;

use crate::error::{Error, Result};
use crate::geom::IntervalModel;
use crate::graph::{dominated_by, is_dominating, Graph, TokenConfig, VertexId};

#[derive(Debug, Clone)]
pub struct ForcedDominationQuery<'a> {
    pub model: &'a IntervalModel,
    pub forced: Vec<VertexId>,
    pub budget: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// An interval model together with its intersection graph.
#[derive(Debug, Clone)]
pub struct IntervalDomination<'a> {
    model: &'a IntervalModel,
    graph: Graph,
}

impl<'a> IntervalDomination<'a> {
    pub fn new(model: &'a IntervalModel) -> Self {
        IntervalDomination {
            model,
            graph: model.intersection_graph(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Minimum number of extra vertices needed, on top of `forced`, and one
    /// such set (ascending). Greedy: the undominated vertex with the smallest
    /// right end is covered by its neighbor reaching furthest right.
    pub fn greedy_completion(&self, forced: &[VertexId]) -> Vec<VertexId> {
        let mut dominated = dominated_by(&self.graph, forced.iter().copied());
        let mut pending: Vec<VertexId> = (0..self.model.len()).filter(|&v| !dominated[v]).collect();
        pending.sort_by_key(|&v| (self.model.interval(v).hi(), v));
        let mut chosen = Vec::new();
        for x in pending {
            if dominated[x] {
                continue;
            }
            let best = std::iter::once(x)
                .chain(self.graph.neighbors(x).iter().copied())
                .max_by_key(|&y| (self.model.interval(y).hi(), Reverse(y)))
                .expect("closed neighborhood is non-empty");
            dominated[best] = true;
            for &w in self.graph.neighbors(best) {
                dominated[w] = true;
            }
            chosen.push(best);
        }
        chosen.sort_unstable();
        chosen
    }

    /// See [`min_dominating_with_forced`].
    pub fn min_with_forced(&self, forced: &[VertexId], budget: usize) -> Option<TokenConfig> {
        let mut forced: Vec<VertexId> = forced.to_vec();
        forced.sort_unstable();
        forced.dedup();
        let extra = self.greedy_completion(&forced);
        let size = forced.len() + extra.len();
        if size > budget {
            return None;
        }
        let pad = forced.first().or(extra.first()).copied();
        let mut tokens: Vec<VertexId> = forced.into_iter().chain(extra).collect();
        if let Some(p) = pad {
            tokens.extend(std::iter::repeat_n(p, budget - size));
        }
        Some(TokenConfig::new(tokens))
    }

    /// Scans `candidates` in the given order and returns the first one that
    /// fits in a dominating multiset of size `budget` containing `forced`,
    /// together with that multiset. Falls back to a set built from `forced`
    /// alone when no candidate fits.
    pub fn first_feasible(
        &self,
        forced: &[VertexId],
        budget: usize,
        candidates: &[VertexId],
    ) -> Option<(TokenConfig, Option<VertexId>)> {
        let mut with = forced.to_vec();
        for &c in candidates {
            with.push(c);
            if let Some(set) = self.min_with_forced(&with, budget) {
                return Some((set, Some(c)));
            }
            with.pop();
        }
        self.min_with_forced(forced, budget).map(|set| (set, None))
    }
}

/// A dominating multiset of minimum cardinality among those containing every
/// forced vertex, padded to exactly `budget` tokens with duplicates of the
/// smallest forced vertex. `None` when the minimum exceeds the budget.
///
/// ```
/// use dsr_core::geom::IntervalModel;
/// use dsr_core::interval_dom::{min_dominating_with_forced, ForcedDominationQuery};
/// use dsr_core::TokenConfig;
///
/// let path = IntervalModel::from_bounded(&[(0, 1), (1, 2), (2, 3)]).unwrap();
/// let q = ForcedDominationQuery { model: &path, forced: vec![], budget: 1 };
/// assert_eq!(min_dominating_with_forced(&q), Some(TokenConfig::new([1])));
/// ```
pub fn min_dominating_with_forced(q: &ForcedDominationQuery<'_>) -> Option<TokenConfig> {
    IntervalDomination::new(q.model).min_with_forced(&q.forced, q.budget)
}

/// Vertices with an unbounded side: the end vertices of an unfolded model.
pub fn end_vertices(model: &IntervalModel) -> Vec<VertexId> {
    (0..model.len())
        .filter(|&v| {
            let iv = model.interval(v);
            iv.unbounded_left || iv.unbounded_right
        })
        .collect()
}

/// Non-end vertices strictly on `side` of `anchor` (by left extremity), in
/// the order an extremal search tries them: nearest left extremity first,
/// ties broken toward the longer reach, then by id.
pub fn side_candidates(model: &IntervalModel, anchor: VertexId, side: Side) -> Vec<VertexId> {
    let a = model.interval(anchor).lo();
    let mut out: Vec<VertexId> = (0..model.len())
        .filter(|&x| {
            let iv = model.interval(x);
            !(iv.unbounded_left || iv.unbounded_right)
                && match side {
                    Side::Right => iv.lo() > a,
                    Side::Left => iv.lo() < a,
                }
        })
        .collect();
    match side {
        Side::Right => out.sort_by_key(|&x| {
            let iv = model.interval(x);
            (iv.lo(), Reverse(iv.hi()), x)
        }),
        Side::Left => out.sort_by_key(|&x| {
            let iv = model.interval(x);
            (Reverse(iv.lo()), Reverse(iv.hi()), x)
        }),
    }
    out
}

/// A dominating multiset of size `budget` containing every end vertex whose
/// first non-end vertex on `side` of `anchor` has extremal left extremity:
/// smallest for [`Side::Right`], largest for [`Side::Left`].
pub fn extremal_dominating(
    model: &IntervalModel,
    budget: usize,
    anchor: VertexId,
    side: Side,
) -> Option<TokenConfig> {
    let ctx = IntervalDomination::new(model);
    let forced = end_vertices(model);
    let candidates = side_candidates(model, anchor, side);
    ctx.first_feasible(&forced, budget, &candidates)
        .map(|(set, _)| set)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalReach {
    Reachable,
    SizeMismatch,
    Disconnected,
}

/// Reachability between dominating sets of an interval graph. Connected
/// interval graphs allow a sequence between any two dominating sets of equal
/// size; disconnected ones are reported as such and answered `false`.
pub fn interval_ts_reach(
    model: &IntervalModel,
    ds: &TokenConfig,
    dt: &TokenConfig,
) -> Result<IntervalReach> {
    let g = model.intersection_graph();
    interval_graph_reach(&g, ds, dt)
}

pub(crate) fn interval_graph_reach(
    g: &Graph,
    ds: &TokenConfig,
    dt: &TokenConfig,
) -> Result<IntervalReach> {
    for (name, c) in [("source", ds), ("target", dt)] {
        if !is_dominating(g, c)? {
            return Err(Error::InvalidInput(format!(
                "{name} configuration is not dominating"
            )));
        }
    }
    if ds.len() != dt.len() {
        Ok(IntervalReach::SizeMismatch)
    } else if !g.is_connected() {
        Ok(IntervalReach::Disconnected)
    } else {
        Ok(IntervalReach::Reachable)
    }
}

pub fn interval_ts_reachable(
    model: &IntervalModel,
    ds: &TokenConfig,
    dt: &TokenConfig,
) -> Result<bool> {
    Ok(interval_ts_reach(model, ds, dt)? == IntervalReach::Reachable)
}

//! Single-token reachability and the right/left sliding walks.

use std::collections::VecDeque;

use super::unfold::{build_gu, project_config, UnfoldedGraph, U_LEFT, U_RIGHT};
use crate::error::{Error, Result};
use crate::geom::CircularArcModel;
use crate::graph::{dominated_by, Graph, TokenConfig, VertexId};
use crate::interval_dom::IntervalDomination;

/// Vertices a single token starting on `start` can visit while every other
/// token stays on `fixed` and every intermediate position keeps domination.
pub fn single_token_reach(g: &Graph, fixed: &TokenConfig, start: VertexId) -> Vec<VertexId> {
    let parent = token_bfs(g, fixed, start);
    (0..g.vertex_count())
        .filter(|&v| parent[v] != usize::MAX)
        .collect()
}

/// The walk (inclusive) from `start` to `target` found by [`single_token_reach`].
pub fn single_token_walk(
    g: &Graph,
    fixed: &TokenConfig,
    start: VertexId,
    target: VertexId,
) -> Option<Vec<VertexId>> {
    let parent = token_bfs(g, fixed, start);
    if parent[target] == usize::MAX {
        return None;
    }
    let mut walk = vec![target];
    let mut cur = target;
    while cur != start {
        cur = parent[cur];
        walk.push(cur);
    }
    walk.reverse();
    Some(walk)
}

fn token_bfs(g: &Graph, fixed: &TokenConfig, start: VertexId) -> Vec<usize> {
    let dominated = dominated_by(g, fixed.iter());
    // x is a legal position iff N[x] covers everything `fixed` misses
    let missing: Vec<VertexId> = (0..g.vertex_count()).filter(|&v| !dominated[v]).collect();
    let legal = |x: VertexId| missing.iter().all(|&w| w == x || g.has_edge(x, w));
    let mut parent = vec![usize::MAX; g.vertex_count()];
    if !legal(start) {
        return parent;
    }
    parent[start] = start;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if parent[y] == usize::MAX && legal(y) {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    parent
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Clockwise, toward the first target token right of `u1`.
    Right,
    /// Counterclockwise.
    Left,
}

/// One round of a sliding walk: the configuration after rearranging the other
/// tokens in the unfolded graph, and the walk of the pivot token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlideStep {
    pub pivot: VertexId,
    /// Configuration (on maximal arcs) containing `pivot` whose other tokens
    /// sit as close to the pivot as possible on the trailing side.
    pub rearranged: TokenConfig,
    /// Arc the pivot token moves to; equal to `pivot` at a fixed point.
    pub next: VertexId,
    /// Single-token walk from `pivot` to `next`, inclusive.
    pub walk: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlideOutcome {
    /// `u_1, u_2, ..., u_l`.
    pub visited: Vec<VertexId>,
    pub steps: Vec<SlideStep>,
}

impl SlideOutcome {
    pub fn last(&self) -> VertexId {
        *self.visited.last().expect("walk starts at u1")
    }
}

/// Precomputed circle data for the walks: maximal arcs and the graph.
pub(crate) struct SlideContext<'a> {
    pub m: &'a CircularArcModel,
    pub graph: Graph,
    pub maximal: Vec<bool>,
}

impl<'a> SlideContext<'a> {
    pub fn new(m: &'a CircularArcModel) -> Self {
        let maximal = (0..m.len()).map(|v| m.is_maximal(v)).collect();
        SlideContext {
            m,
            graph: m.intersection_graph(),
            maximal,
        }
    }

    /// Offset of `l(x)` from `l(u1)` measured in `dir`.
    fn offset(&self, u1: VertexId, x: VertexId, dir: Direction) -> i64 {
        let (a, b) = (self.m.left(u1).unwrap(), self.m.left(x).unwrap());
        match dir {
            Direction::Right => self.m.modulo(b - a),
            Direction::Left => self.m.modulo(a - b),
        }
    }

    /// Candidate order for the token trailing the pivot. Going right, the
    /// trailing token sits counterclockwise of `u`, and the best one reaches
    /// furthest clockwise (largest offset of its right end past `r(u)`);
    /// going left, the best one reaches furthest counterclockwise.
    fn trailing_candidates(&self, gu: &UnfoldedGraph, dir: Direction) -> Vec<VertexId> {
        let u = gu.pivot();
        let m = self.m;
        let mut cands: Vec<(i64, VertexId)> = gu
            .images()
            .filter_map(|x| {
                let v = gu.base_of(x)?;
                if !self.maximal[v] {
                    return None;
                }
                let key = match dir {
                    Direction::Right => -m.modulo(m.right(v).unwrap() - m.right(u).unwrap()),
                    Direction::Left => m.modulo(m.left(v).unwrap() - m.left(u).unwrap()),
                };
                Some((key, x))
            })
            .collect();
        cands.sort_unstable();
        cands.into_iter().map(|(_, x)| x).collect()
    }

    /// Rearranged configuration at pivot `u` for `k` tokens.
    pub fn rearrange(&self, u: VertexId, k: usize, dir: Direction) -> Result<TokenConfig> {
        let gu = build_gu(self.m, u)?;
        let ctx = IntervalDomination::new(gu.model());
        let candidates = self.trailing_candidates(&gu, dir);
        let (set, _) = ctx
            .first_feasible(&[U_LEFT, U_RIGHT], k + 1, &candidates)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "no dominating set of size {} in the unfolded graph at {u}",
                    k + 1
                ))
            })?;
        let projected = project_config(&gu, &set)?;
        Ok(self.m.normalize_to_maximal(&projected).0)
    }

    /// Runs the sliding walk from `u1` toward `target`, for `k` tokens.
    pub fn slide(
        &self,
        u1: VertexId,
        target: VertexId,
        k: usize,
        dir: Direction,
    ) -> Result<SlideOutcome> {
        let mut visited = vec![u1];
        let mut steps = Vec::new();
        let mut u = u1;
        let target_off = self.offset(u1, target, dir);
        for _ in 0..self.m.len() {
            if u == target {
                break;
            }
            let rearranged = self.rearrange(u, k, dir)?;
            let fixed = rearranged.without_one(u).expect("pivot carries a token");
            let reach = single_token_reach(&self.graph, &fixed, u);
            let here = self.offset(u1, u, dir);
            let next = if reach.binary_search(&target).is_ok() {
                target
            } else {
                reach
                    .iter()
                    .copied()
                    .filter(|&x| self.maximal[x])
                    .filter(|&x| {
                        let off = self.offset(u1, x, dir);
                        here < off && off < target_off
                    })
                    .max_by_key(|&x| (self.offset(u1, x, dir), std::cmp::Reverse(x)))
                    .unwrap_or(u)
            };
            let walk = single_token_walk(&self.graph, &fixed, u, next).expect("next is reachable");
            steps.push(SlideStep {
                pivot: u,
                rearranged,
                next,
                walk,
            });
            if next == u {
                break;
            }
            visited.push(next);
            u = next;
        }
        Ok(SlideOutcome { visited, steps })
    }
}

fn check_slide_input(
    m: &CircularArcModel,
    ds: &TokenConfig,
    u1: VertexId,
    target: VertexId,
) -> Result<()> {
    for v in ds.support().chain([u1, target]) {
        if v >= m.len() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: m.len(),
            });
        }
    }
    if !ds.contains(u1) {
        return Err(Error::InvalidInput(format!("{u1} carries no token")));
    }
    if m.has_full_circle().is_some() {
        return Err(Error::InvalidInput("model has a full-circle arc".into()));
    }
    if let Some(v) = ds.support().chain([target]).find(|&v| !m.is_maximal(v)) {
        return Err(Error::InvalidInput(format!(
            "arc {v} is not maximal by inclusion"
        )));
    }
    if !crate::graph::is_dominating(&m.intersection_graph(), ds)? {
        return Err(Error::InvalidInput(
            "source configuration is not dominating".into(),
        ));
    }
    Ok(())
}

/// Pushes the token on `u1` clockwise toward `v` for as long as the unfolded
/// rearrangement allows. Returns the arcs visited, ending at `v` or at a fixed
/// point.
pub fn right_sliding(
    m: &CircularArcModel,
    ds: &TokenConfig,
    u1: VertexId,
    v: VertexId,
) -> Result<SlideOutcome> {
    check_slide_input(m, ds, u1, v)?;
    SlideContext::new(m).slide(u1, v, ds.len(), Direction::Right)
}

/// Mirror image of [`right_sliding`], moving counterclockwise toward `v`.
pub fn left_sliding(
    m: &CircularArcModel,
    ds: &TokenConfig,
    u1: VertexId,
    v: VertexId,
) -> Result<SlideOutcome> {
    check_slide_input(m, ds, u1, v)?;
    SlideContext::new(m).slide(u1, v, ds.len(), Direction::Left)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::ring_model;
    use crate::graph::cycle;

    #[test]
    fn reach_when_fixed_dominates() {
        let g = cycle(6);
        let fixed = TokenConfig::new([0, 2, 4]);
        assert_eq!(single_token_reach(&g, &fixed, 1), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn reach_stuck() {
        let g = cycle(6);
        assert_eq!(single_token_reach(&g, &TokenConfig::new([3]), 0), vec![0]);
        assert_eq!(
            single_token_walk(&g, &TokenConfig::new([3]), 0, 0),
            Some(vec![0])
        );
        assert_eq!(single_token_walk(&g, &TokenConfig::new([3]), 0, 1), None);
    }

    #[test]
    fn six_cycle_fixed_points() {
        let m = ring_model(6);
        let ds = TokenConfig::new([0, 3]);
        let right = right_sliding(&m, &ds, 0, 1).unwrap();
        assert_eq!(right.visited, vec![0]);
        let left = left_sliding(&m, &ds, 0, 5).unwrap();
        assert_eq!(left.visited, vec![0]);
        assert_eq!(right_sliding(&m, &ds, 0, 0).unwrap().visited, vec![0]);
        assert_eq!(left_sliding(&m, &ds, 0, 0).unwrap().visited, vec![0]);
    }

    #[test]
    fn spare_token_moves_freely() {
        let m = ring_model(6);
        let ds = TokenConfig::new([0, 2, 4]);
        let right = right_sliding(&m, &ds, 0, 3).unwrap();
        assert_eq!(right.last(), 3);
        let again = right_sliding(&m, &ds, 0, 3).unwrap();
        assert_eq!(right, again);
    }
}

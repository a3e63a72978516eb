//! Token-sliding reachability between dominating sets of circular-arc graphs.

pub mod sliding;
pub mod unfold;

pub use sliding::{
    left_sliding, right_sliding, single_token_reach, single_token_walk, Direction, SlideOutcome,
    SlideStep,
};
pub use unfold::{build_gu, lift_config, project_config, UnfoldedGraph, U_LEFT, U_RIGHT};

use sliding::SlideContext;

use crate::error::{Error, Result};
use crate::geom::CircularArcModel;
use crate::graph::{is_dominating, Graph, ReconfSequence, SlideMove, TokenConfig, VertexId};
use crate::interval_dom::{interval_graph_reach, IntervalReach};
use crate::oracle::{reconfig_bfs, OracleOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Build an explicit sequence for positive answers.
    pub witness: bool,
    /// State-space cap for each oracle search used while building witnesses.
    pub witness_cap: u128,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            witness: false,
            witness_cap: 200_000,
        }
    }
}

/// Which branch of the procedure produced the answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CarcCase {
    SizeMismatch,
    FullCircle {
        arc: VertexId,
    },
    /// Some point of the circle is uncovered: the graph is an interval graph.
    Interval,
    /// Sliding walks from `u1` toward `v` (clockwise) and `v_left`
    /// (counterclockwise).
    Sliding {
        u1: VertexId,
        v: VertexId,
        v_left: VertexId,
        right: Vec<VertexId>,
        left: Vec<VertexId>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarcVerdict {
    pub reachable: bool,
    pub case: CarcCase,
    pub witness: Option<ReconfSequence>,
    /// Why no witness was produced for a positive answer in witness mode.
    pub witness_note: Option<String>,
}

/// Decides whether `dt` can be reached from `ds` by token slides keeping a
/// dominating set at every step.
///
/// ```
/// use dsr_core::carc::decide_carc;
/// use dsr_core::geom::ring_model;
/// use dsr_core::TokenConfig;
///
/// let c6 = ring_model(6);
/// let ds = TokenConfig::new([0, 3]);
/// assert!(!decide_carc(&c6, &ds, &TokenConfig::new([1, 4])).unwrap());
/// assert!(decide_carc(&c6, &ds, &ds).unwrap());
/// ```
pub fn decide_carc(m: &CircularArcModel, ds: &TokenConfig, dt: &TokenConfig) -> Result<bool> {
    Ok(solve_carc(m, ds, dt, SolveOptions::default())?.reachable)
}

pub fn solve_carc(
    m: &CircularArcModel,
    ds: &TokenConfig,
    dt: &TokenConfig,
    opts: SolveOptions,
) -> Result<CarcVerdict> {
    let g = m.intersection_graph();
    for (name, c) in [("source", ds), ("target", dt)] {
        if !is_dominating(&g, c)? {
            return Err(Error::InvalidInput(format!(
                "{name} configuration is not dominating"
            )));
        }
    }
    let verdict = |reachable, case| CarcVerdict {
        reachable,
        case,
        witness: None,
        witness_note: None,
    };
    if ds.len() != dt.len() {
        return Ok(verdict(false, CarcCase::SizeMismatch));
    }
    if let Some(w) = m.has_full_circle() {
        let mut out = verdict(true, CarcCase::FullCircle { arc: w });
        if opts.witness {
            out.witness = Some(full_circle_witness(m, ds, dt, w)?);
        }
        return Ok(out);
    }
    let (_, components) = g.components();
    if components > 1 {
        return Err(Error::Disconnected { components });
    }
    if m.uncovered_point().is_some() {
        let reachable = interval_graph_reach(&g, ds, dt)? == IntervalReach::Reachable;
        let mut out = verdict(reachable, CarcCase::Interval);
        if reachable && opts.witness {
            attach_oracle_witness(&mut out, &g, ds, dt, opts);
        }
        return Ok(out);
    }

    let (ds_norm, ds_moves) = m.normalize_to_maximal(ds);
    let (dt_norm, dt_moves) = m.normalize_to_maximal(dt);
    let lefts = |v: VertexId| m.left(v).expect("no full-circle arc");
    let u1 = ds_norm
        .support()
        .min_by_key(|&v| lefts(v))
        .expect("non-empty configuration");
    let l1 = lefts(u1);
    let v = dt_norm
        .support()
        .min_by_key(|&x| m.modulo(lefts(x) - l1))
        .unwrap();
    let v_left = dt_norm
        .support()
        .min_by_key(|&x| m.modulo(l1 - lefts(x)))
        .unwrap();

    let ctx = SlideContext::new(m);
    let k = ds.len();
    let right = ctx.slide(u1, v, k, Direction::Right)?;
    let left = ctx.slide(u1, v_left, k, Direction::Left)?;
    let right_hit = right.last() == v;
    let left_hit = left.last() == v_left;
    let reachable = right_hit || left_hit;
    let mut out = verdict(
        reachable,
        CarcCase::Sliding {
            u1,
            v,
            v_left,
            right: right.visited.clone(),
            left: left.visited.clone(),
        },
    );
    if reachable && opts.witness {
        let outcome = if right_hit { &right } else { &left };
        match sliding_witness(&g, &ds_norm, &dt_norm, outcome, opts) {
            Ok(middle) => {
                let mut seq = ReconfSequence::new(ds.clone(), ds_moves);
                seq.extend(middle);
                seq.extend(dt_moves.iter().rev().map(|mv| mv.reversed()));
                out.witness = Some(seq);
            }
            Err(note) => out.witness_note = Some(note),
        }
    }
    Ok(out)
}

fn attach_oracle_witness(
    out: &mut CarcVerdict,
    g: &Graph,
    ds: &TokenConfig,
    dt: &TokenConfig,
    opts: SolveOptions,
) {
    match oracle_moves(g, ds, dt, opts) {
        Ok(moves) => out.witness = Some(ReconfSequence::new(ds.clone(), moves)),
        Err(note) => out.witness_note = Some(note),
    }
}

fn oracle_moves(
    g: &Graph,
    from: &TokenConfig,
    to: &TokenConfig,
    opts: SolveOptions,
) -> std::result::Result<Vec<SlideMove>, String> {
    let oracle = OracleOptions {
        cap: opts.witness_cap,
        parallel: false,
    };
    match reconfig_bfs(g, from, to, true, oracle) {
        Ok(Some(seq)) => Ok(seq.moves),
        Ok(None) => Err(format!("oracle found no sequence from {from} to {to}")),
        Err(e) => Err(format!("oracle search skipped: {e}")),
    }
}

/// Moves realizing a successful sliding walk: per round, an oracle search to
/// the rearranged configuration followed by the pivot's own walk; then an
/// oracle search to the target, which shares the final pivot.
fn sliding_witness(
    g: &Graph,
    ds: &TokenConfig,
    dt: &TokenConfig,
    outcome: &SlideOutcome,
    opts: SolveOptions,
) -> std::result::Result<Vec<SlideMove>, String> {
    let mut moves = Vec::new();
    let mut cur = ds.clone();
    for step in &outcome.steps {
        if step.next == step.pivot {
            break;
        }
        moves.extend(oracle_moves(g, &cur, &step.rearranged, opts)?);
        cur = step.rearranged.clone();
        for w in step.walk.windows(2) {
            moves.push(SlideMove::new(w[0], w[1]));
            cur = cur.replace_one(w[0], w[1]).expect("pivot token present");
        }
    }
    moves.extend(oracle_moves(g, &cur, dt, opts)?);
    Ok(moves)
}

/// A sequence from `ds` to `dt` when arc `w` covers the whole circle. A hub
/// token parks on `w` (which dominates everything on its own), every other
/// token travels through `w`'s neighborhood, and the hub finally leaves.
pub fn full_circle_witness(
    m: &CircularArcModel,
    ds: &TokenConfig,
    dt: &TokenConfig,
    w: VertexId,
) -> Result<ReconfSequence> {
    if w >= m.len() || !m.arc(w).is_full() {
        return Err(Error::Precondition(format!(
            "arc {w} does not cover the whole circle"
        )));
    }
    if ds.len() != dt.len() {
        return Err(Error::Precondition("configurations differ in size".into()));
    }
    let g = m.intersection_graph();
    let mut seq = ReconfSequence::empty(ds.clone());
    let mut from: Vec<VertexId> = ds.difference(dt).iter().collect();
    let mut to: Vec<VertexId> = dt.difference(ds).iter().collect();
    if from.is_empty() {
        return Ok(seq);
    }
    // park the hub: a token already on w, or the first surplus token
    let hub_in_common = ds.contains(w) && !from.contains(&w);
    if !hub_in_common {
        match from.iter().position(|&x| x == w) {
            Some(i) => {
                from.remove(i);
            }
            None => {
                let a = from.remove(0);
                seq.moves.push(SlideMove::new(a, w));
            }
        }
    }
    // the hub leaves for a target at the end, unless w itself is one
    let hub_target = if hub_in_common {
        None
    } else {
        match to.iter().position(|&x| x == w) {
            Some(i) => {
                to.remove(i);
                None
            }
            None => Some(to.remove(0)),
        }
    };
    for (&a, &b) in from.iter().zip(&to) {
        if g.has_edge(a, b) {
            seq.moves.push(SlideMove::new(a, b));
        } else {
            seq.moves.push(SlideMove::new(a, w));
            seq.moves.push(SlideMove::new(w, b));
        }
    }
    if let Some(b) = hub_target {
        seq.moves.push(SlideMove::new(w, b));
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{ring_model, Arc};
    use crate::graph::validate_sequence;

    #[test]
    fn six_cycle_classes() {
        let m = ring_model(6);
        let ds = TokenConfig::new([0, 3]);
        assert!(!decide_carc(&m, &ds, &TokenConfig::new([1, 4])).unwrap());
        assert!(!decide_carc(&m, &ds, &TokenConfig::new([2, 5])).unwrap());
        assert!(decide_carc(&m, &ds, &ds).unwrap());
        assert!(!decide_carc(&m, &ds, &TokenConfig::new([0, 2, 4])).unwrap());
    }

    #[test]
    fn rejects_bad_inputs() {
        let m = ring_model(6);
        assert!(decide_carc(&m, &TokenConfig::new([1, 3]), &TokenConfig::new([1, 4])).is_err());
        let split = CircularArcModel::from_spans(20, &[(0, 2), (5, 7)]).unwrap();
        let c = TokenConfig::new([0, 1]);
        assert_eq!(
            decide_carc(&split, &c, &c),
            Err(Error::Disconnected { components: 2 })
        );
    }

    fn star() -> CircularArcModel {
        CircularArcModel::new(
            20,
            vec![
                Arc::Full,
                Arc::Span { l: 0, r: 3 },
                Arc::Span { l: 5, r: 8 },
                Arc::Span { l: 10, r: 13 },
                Arc::Span { l: 15, r: 18 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn full_circle_sequences() {
        let m = star();
        let g = m.intersection_graph();
        let cases = [
            (vec![1, 2, 3, 4], vec![0, 0, 0, 0]),
            (vec![0, 0, 0, 0], vec![1, 2, 3, 4]),
            (vec![0, 1], vec![0, 3]),
            (vec![0, 3], vec![0, 3]),
            (vec![0, 0, 1], vec![0, 2, 4]),
            (vec![1, 2, 3, 4, 4], vec![0, 1, 1, 2, 3]),
        ];
        for (s, t) in cases {
            let (ds, dt) = (TokenConfig::new(s), TokenConfig::new(t));
            let seq = full_circle_witness(&m, &ds, &dt, 0).unwrap();
            let report = validate_sequence(&g, &seq, true);
            assert!(report.is_valid(), "{ds} -> {dt}: {:?}", report.failure);
            assert_eq!(report.end, dt);
            assert!(seq.len() <= 2 * ds.len() + 2);
            let verdict = solve_carc(
                &m,
                &ds,
                &dt,
                SolveOptions {
                    witness: true,
                    ..Default::default()
                },
            )
            .unwrap();
            assert!(verdict.reachable);
            assert_eq!(verdict.witness, Some(seq));
        }
    }

    #[test]
    fn interval_case_uses_connectivity() {
        let m = CircularArcModel::from_spans(30, &[(0, 4), (3, 8), (7, 12), (11, 16)]).unwrap();
        let ds = TokenConfig::new([1, 2]);
        let dt = TokenConfig::new([0, 3]);
        let verdict = solve_carc(
            &m,
            &ds,
            &dt,
            SolveOptions {
                witness: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(verdict.reachable);
        assert_eq!(verdict.case, CarcCase::Interval);
        let seq = verdict.witness.unwrap();
        assert!(validate_sequence(&m.intersection_graph(), &seq, true).is_valid());
        assert_eq!(seq.end(), dt);
    }
}

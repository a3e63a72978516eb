//! Chord (circle-graph) models given as intervals: two chords cross exactly
//! when their endpoints strictly interleave.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::interval::parse_rows;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChordModel {
    intervals: Vec<(i64, i64)>,
}

impl ChordModel {
    pub fn new(intervals: Vec<(i64, i64)>) -> Result<Self> {
        for (id, &(l, r)) in intervals.iter().enumerate() {
            if l >= r {
                return Err(Error::InvalidModel(format!(
                    "chord {id}: left end {l} must be below right end {r}"
                )));
            }
        }
        Ok(ChordModel { intervals })
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[(i64, i64)] {
        &self.intervals
    }

    pub fn interval(&self, v: VertexId) -> (i64, i64) {
        self.intervals[v]
    }

    pub fn crosses(&self, a: VertexId, b: VertexId) -> bool {
        let ((la, ra), (lb, rb)) = (self.intervals[a], self.intervals[b]);
        (la < lb && lb < ra && ra < rb) || (lb < la && la < rb && rb < ra)
    }

    /// Sweeps chords by left end. Every chord `a` seen earlier with
    /// `l(a) < l(b)` is kept in a set ordered by right end, and `b` crosses
    /// exactly those with `l(b) < r(a) < r(b)`, so the cost is proportional
    /// to the number of crossings rather than of nested pairs.
    pub fn overlap_graph(&self) -> Graph {
        let mut order: Vec<VertexId> = (0..self.len()).collect();
        order.sort_by_key(|&v| (self.intervals[v].0, v));
        let mut seen: BTreeSet<(i64, VertexId)> = BTreeSet::new();
        let mut edges = Vec::new();
        for group in order.chunk_by(|&a, &b| self.intervals[a].0 == self.intervals[b].0) {
            // chords sharing a left end never cross, so query before inserting
            for &b in group {
                let (lb, rb) = self.intervals[b];
                edges.extend(seen.range((lb + 1, 0)..(rb, 0)).map(|&(_, a)| (a, b)));
            }
            seen.extend(group.iter().map(|&b| (self.intervals[b].1, b)));
        }
        Graph::from_edges(self.len(), edges).expect("sweep edges are valid")
    }
}

impl fmt::Display for ChordModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "chords {}", self.len())?;
        for (id, (l, r)) in self.intervals.iter().enumerate() {
            writeln!(f, "{id} {l} {r}")?;
        }
        Ok(())
    }
}

impl FromStr for ChordModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = parse_rows(s, "chords", false)?;
        ChordModel::new(
            rows.into_iter()
                .map(|(l, r)| (l.expect("finite"), r.expect("finite")))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_rules() {
        let m = ChordModel::new(vec![(0, 2), (1, 3)]).unwrap();
        assert!(m.overlap_graph().has_edge(0, 1));
        let m = ChordModel::new(vec![(0, 3), (1, 2)]).unwrap();
        assert!(!m.overlap_graph().has_edge(0, 1));
        let m = ChordModel::new(vec![(1, 4), (1, 4)]).unwrap();
        assert!(!m.overlap_graph().has_edge(0, 1));
        // shared right end is not a crossing
        let m = ChordModel::new(vec![(0, 5), (2, 5), (3, 8)]).unwrap();
        let g = m.overlap_graph();
        assert!(!g.has_edge(0, 1));
        assert!(g.has_edge(0, 2));
        assert!(g.has_edge(1, 2));
    }

    #[test]
    fn sweep_matches_pairwise() {
        let iv = vec![
            (0, 5),
            (1, 7),
            (2, 3),
            (2, 9),
            (4, 6),
            (5, 10),
            (6, 8),
            (1, 7),
        ];
        let m = ChordModel::new(iv.clone()).unwrap();
        let g = m.overlap_graph();
        for a in 0..iv.len() {
            for b in 0..iv.len() {
                if a != b {
                    assert_eq!(g.has_edge(a, b), m.crosses(a, b), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn text_roundtrip() {
        let m = ChordModel::new(vec![(0, 4), (2, 9)]).unwrap();
        assert_eq!(m.to_string().parse::<ChordModel>().unwrap(), m);
        assert!("chords 1\n0 4 4\n".parse::<ChordModel>().is_err());
    }
}

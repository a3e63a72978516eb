//! Circular-arc models on an integer circle `[0, M)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::interval::{Interval, IntervalModel};
use crate::error::{Error, Result};
use crate::graph::{Graph, SlideMove, TokenConfig, VertexId};
use crate::io::{content_lines, parse_num};

/// An arc spanning clockwise from `l` to `r`, or the whole circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arc {
    Span { l: i64, r: i64 },
    Full,
}

impl Arc {
    pub fn is_full(&self) -> bool {
        matches!(self, Arc::Full)
    }
}

/// Circular-arc model with arcs in general position: the `2n` endpoints of
/// non-full arcs are pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CircularArcModel {
    circumference: i64,
    arcs: Vec<Arc>,
}

impl CircularArcModel {
    pub fn new(circumference: i64, arcs: Vec<Arc>) -> Result<Self> {
        if circumference <= 0 {
            return Err(Error::InvalidModel("circumference must be positive".into()));
        }
        let mut seen = HashMap::new();
        for (id, arc) in arcs.iter().enumerate() {
            if let Arc::Span { l, r } = *arc {
                for p in [l, r] {
                    if !(0..circumference).contains(&p) {
                        return Err(Error::InvalidModel(format!(
                            "arc {id}: endpoint {p} outside [0, {circumference})"
                        )));
                    }
                    if let Some(other) = seen.insert(p, id) {
                        return Err(Error::InvalidModel(format!(
                            "arcs {other} and {id} share endpoint {p}"
                        )));
                    }
                }
                // l == r would already have been caught as a shared endpoint
            }
        }
        Ok(CircularArcModel {
            circumference,
            arcs,
        })
    }

    /// Convenience constructor for models without full-circle arcs.
    pub fn from_spans(circumference: i64, spans: &[(i64, i64)]) -> Result<Self> {
        Self::new(
            circumference,
            spans.iter().map(|&(l, r)| Arc::Span { l, r }).collect(),
        )
    }

    pub fn circumference(&self) -> i64 {
        self.circumference
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, v: VertexId) -> Arc {
        self.arcs[v]
    }

    pub(crate) fn modulo(&self, x: i64) -> i64 {
        x.rem_euclid(self.circumference)
    }

    /// Left (counterclockwise) extremity; `None` for a full arc.
    pub fn left(&self, v: VertexId) -> Option<i64> {
        match self.arcs[v] {
            Arc::Span { l, .. } => Some(l),
            Arc::Full => None,
        }
    }

    pub fn right(&self, v: VertexId) -> Option<i64> {
        match self.arcs[v] {
            Arc::Span { r, .. } => Some(r),
            Arc::Full => None,
        }
    }

    /// Clockwise length; `M` for a full arc.
    pub fn arc_len(&self, v: VertexId) -> i64 {
        match self.arcs[v] {
            Arc::Span { l, r } => self.modulo(r - l),
            Arc::Full => self.circumference,
        }
    }

    pub fn contains_point(&self, v: VertexId, x: i64) -> bool {
        match self.arcs[v] {
            Arc::Span { l, r } => self.modulo(x - l) <= self.modulo(r - l),
            Arc::Full => true,
        }
    }

    pub fn intersects(&self, a: VertexId, b: VertexId) -> bool {
        match (self.arcs[a], self.arcs[b]) {
            (Arc::Full, _) | (_, Arc::Full) => true,
            (Arc::Span { l: la, .. }, Arc::Span { l: lb, .. }) => {
                self.contains_point(a, lb) || self.contains_point(b, la)
            }
        }
    }

    /// `arc(b) ⊆ arc(a)`.
    pub fn contains_arc(&self, a: VertexId, b: VertexId) -> bool {
        match (self.arcs[a], self.arcs[b]) {
            (Arc::Full, _) => true,
            (_, Arc::Full) => false,
            (Arc::Span { l: la, .. }, Arc::Span { l: lb, .. }) => {
                self.modulo(lb - la) + self.arc_len(b) <= self.arc_len(a)
            }
        }
    }

    /// `arc(b) ⊊ arc(a)`.
    pub fn strictly_contains(&self, a: VertexId, b: VertexId) -> bool {
        a != b && self.contains_arc(a, b) && self.arcs[a] != self.arcs[b]
    }

    pub fn has_full_circle(&self) -> Option<VertexId> {
        self.arcs.iter().position(Arc::is_full)
    }

    pub fn intersection_graph(&self) -> Graph {
        let n = self.len();
        let edges = (0..n)
            .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.intersects(a, b));
        Graph::from_edges(n, edges).expect("edges are in range and loop-free")
    }

    /// Arcs not strictly contained in another arc, ascending.
    pub fn maximal_arcs(&self) -> Vec<VertexId> {
        (0..self.len()).filter(|&v| self.is_maximal(v)).collect()
    }

    pub fn is_maximal(&self, v: VertexId) -> bool {
        (0..self.len()).all(|w| !self.strictly_contains(w, v))
    }

    /// A maximal arc containing `v` (the largest one, ties by id).
    pub fn maximal_cover(&self, v: VertexId) -> VertexId {
        (0..self.len())
            .filter(|&w| self.contains_arc(w, v) && self.is_maximal(w))
            .max_by_key(|&w| (self.arc_len(w), std::cmp::Reverse(w)))
            .unwrap_or(v)
    }

    /// Slides every token on a non-maximal arc onto a maximal arc containing
    /// it. The returned moves keep domination at every step.
    pub fn normalize_to_maximal(&self, c: &TokenConfig) -> (TokenConfig, Vec<SlideMove>) {
        let mut moves = Vec::new();
        for v in c.iter() {
            let w = self.maximal_cover(v);
            if w != v {
                moves.push(SlideMove::new(v, w));
            }
        }
        let normalized = TokenConfig::new(c.iter().map(|v| self.maximal_cover(v)));
        (normalized, moves)
    }

    /// A point of the circle covered by no arc, in doubled coordinates
    /// (`2x + 1` stands for `x + 1/2`). Every such gap contains a half-integer.
    pub fn uncovered_point(&self) -> Option<i64> {
        if self.has_full_circle().is_some() {
            return None;
        }
        let mut ends: Vec<i64> = self
            .arcs
            .iter()
            .flat_map(|a| match *a {
                Arc::Span { l, r } => [l, r],
                Arc::Full => unreachable!(),
            })
            .collect();
        if ends.is_empty() {
            return Some(1);
        }
        ends.sort_unstable();
        ends.into_iter()
            .find(|&e| {
                // e + 1/2 lies strictly inside the gap after e
                (0..self.len()).all(|v| !self.contains_half_point(v, e))
            })
            .map(|e| 2 * e + 1)
    }

    /// Whether arc `v` contains the point `e + 1/2`.
    fn contains_half_point(&self, v: VertexId, e: i64) -> bool {
        match self.arcs[v] {
            Arc::Span { l, r } => {
                let m2 = 2 * self.circumference;
                (2 * e + 1 - 2 * l).rem_euclid(m2) <= 2 * self.modulo(r - l)
            }
            Arc::Full => true,
        }
    }

    /// Cuts the circle at an uncovered point and returns an interval model
    /// with the same intersection graph (doubled coordinates).
    pub fn to_interval_model(&self) -> Option<IntervalModel> {
        let cut = self.uncovered_point()?;
        let m2 = 2 * self.circumference;
        let intervals = self
            .arcs
            .iter()
            .map(|a| match *a {
                Arc::Span { l, r } => {
                    let lo = (2 * l - cut).rem_euclid(m2);
                    Interval::bounded(lo, lo + 2 * self.modulo(r - l))
                }
                Arc::Full => unreachable!(),
            })
            .collect();
        Some(IntervalModel::new(intervals).expect("bounded intervals are well formed"))
    }
}

impl fmt::Display for CircularArcModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "carc {} {}", self.circumference, self.len())?;
        for (id, a) in self.arcs.iter().enumerate() {
            match a {
                Arc::Span { l, r } => writeln!(f, "{id} {l} {r}")?,
                Arc::Full => writeln!(f, "{id} full")?,
            }
        }
        Ok(())
    }
}

impl FromStr for CircularArcModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = content_lines(s);
        let (lineno, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty arc model file"))?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("carc") {
            return Err(Error::parse(lineno, "expected `carc M n` header"));
        }
        let m: i64 = parse_num(parts.next(), lineno, "circumference")?;
        let n: usize = parse_num(parts.next(), lineno, "arc count")?;
        let mut arcs: Vec<Option<Arc>> = vec![None; n];
        for (lineno, line) in lines {
            let mut parts = line.split_whitespace();
            let id: usize = parse_num(parts.next(), lineno, "arc id")?;
            if id >= n {
                return Err(Error::parse(lineno, format!("arc id {id} out of range")));
            }
            if arcs[id].is_some() {
                return Err(Error::parse(lineno, format!("duplicate arc id {id}")));
            }
            let first = parts.next();
            let arc = if first == Some("full") {
                Arc::Full
            } else {
                let l = parse_num(first, lineno, "left endpoint")?;
                let r = parse_num(parts.next(), lineno, "right endpoint")?;
                Arc::Span { l, r }
            };
            if parts.next().is_some() {
                return Err(Error::parse(lineno, "trailing tokens"));
            }
            arcs[id] = Some(arc);
        }
        let arcs = arcs
            .into_iter()
            .enumerate()
            .map(|(id, a)| a.ok_or_else(|| Error::parse(0, format!("arc {id} missing"))))
            .collect::<Result<Vec<_>>>()?;
        CircularArcModel::new(m, arcs)
    }
}

/// The ring model `[2i, 2i+3] mod 2n`, whose intersection graph is `C_n`.
pub fn ring_model(n: usize) -> CircularArcModel {
    let m = 2 * n as i64;
    let spans: Vec<(i64, i64)> = (0..n as i64).map(|i| (2 * i, (2 * i + 3) % m)).collect();
    CircularArcModel::from_spans(m, &spans).expect("ring model is in general position")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, is_dominating, validate_sequence, ReconfSequence};

    /// Independent overlap check: sample every half-integer point.
    fn overlap_by_sampling(m: &CircularArcModel, a: VertexId, b: VertexId) -> bool {
        (0..2 * m.circumference()).any(|p2| {
            let inside = |v: VertexId| match m.arc(v) {
                Arc::Full => true,
                Arc::Span { l, r } => {
                    let off = (p2 - 2 * l).rem_euclid(2 * m.circumference());
                    off <= 2 * m.modulo(r - l)
                }
            };
            inside(a) && inside(b)
        })
    }

    #[test]
    fn six_cycle() {
        let m = ring_model(6);
        assert_eq!(m.circumference(), 12);
        let g = m.intersection_graph();
        for a in 0..6 {
            for b in (a + 1)..6 {
                assert_eq!(g.has_edge(a, b), overlap_by_sampling(&m, a, b));
            }
        }
        assert_eq!(g, cycle(6));
        assert_eq!(m.maximal_arcs(), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn full_and_disjoint() {
        let m = CircularArcModel::new(12, vec![Arc::Full, Arc::Span { l: 3, r: 4 }]).unwrap();
        assert!(m.intersection_graph().has_edge(0, 1));
        assert_eq!(m.maximal_arcs(), vec![0]);
        let m = CircularArcModel::from_spans(12, &[(0, 2), (5, 7)]).unwrap();
        assert_eq!(m.intersection_graph().edge_count(), 0);
    }

    #[test]
    fn containment() {
        let m = CircularArcModel::from_spans(12, &[(0, 5), (1, 4)]).unwrap();
        assert_eq!(m.maximal_arcs(), vec![0]);
        let (c, moves) = m.normalize_to_maximal(&TokenConfig::new([1]));
        assert_eq!(c, TokenConfig::new([0]));
        assert_eq!(moves, vec![SlideMove::new(1, 0)]);
        let (_, moves) = m.normalize_to_maximal(&TokenConfig::new([0]));
        assert!(moves.is_empty());
    }

    #[test]
    fn wrapping_containment() {
        // [10, 3] wraps and contains [11, 1]
        let m = CircularArcModel::from_spans(12, &[(10, 3), (11, 1), (2, 6)]).unwrap();
        assert!(m.strictly_contains(0, 1));
        assert!(!m.contains_arc(1, 0));
        assert!(m.intersects(0, 2));
        assert!(!m.intersects(1, 2));
        assert_eq!(m.maximal_arcs(), vec![0, 2]);
    }

    #[test]
    fn rejects_shared_endpoints() {
        assert!(matches!(
            CircularArcModel::from_spans(12, &[(0, 3), (3, 5)]),
            Err(Error::InvalidModel(_))
        ));
        assert!(CircularArcModel::from_spans(12, &[(0, 12)]).is_err());
    }

    #[test]
    fn cut_to_intervals() {
        let m = CircularArcModel::from_spans(20, &[(0, 3), (2, 6), (5, 9), (15, 1)]).unwrap();
        let cut = m.uncovered_point().unwrap();
        assert!(cut % 2 == 1);
        let im = m.to_interval_model().unwrap();
        assert_eq!(im.intersection_graph(), m.intersection_graph());
        assert!(ring_model(6).uncovered_point().is_none());
    }

    #[test]
    fn normalization_validates() {
        let m = CircularArcModel::from_spans(
            16,
            &[(0, 6), (1, 3), (5, 11), (7, 9), (10, 15), (12, 14)],
        )
        .unwrap();
        let g = m.intersection_graph();
        let c = TokenConfig::new([1, 3, 5]);
        assert!(is_dominating(&g, &c).unwrap());
        let (end, moves) = m.normalize_to_maximal(&c);
        let report = validate_sequence(&g, &ReconfSequence::new(c, moves), true);
        assert!(report.is_valid());
        assert_eq!(report.end, end);
    }

    #[test]
    fn text_roundtrip() {
        let m = CircularArcModel::new(10, vec![Arc::Span { l: 8, r: 2 }, Arc::Full]).unwrap();
        let text = m.to_string();
        assert_eq!(text, "carc 10 2\n0 8 2\n1 full\n");
        assert_eq!(text.parse::<CircularArcModel>().unwrap(), m);
        let err = "carc 10 2\n0 8 2\n1 x 4\n"
            .parse::<CircularArcModel>()
            .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }
}

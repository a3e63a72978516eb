//! Closed intervals of the real line, optionally unbounded on either side.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::io::{content_lines, parse_header, parse_num};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub l: i64,
    pub r: i64,
    pub unbounded_left: bool,
    pub unbounded_right: bool,
}

impl Interval {
    pub fn bounded(l: i64, r: i64) -> Self {
        Interval {
            l,
            r,
            unbounded_left: false,
            unbounded_right: false,
        }
    }

    /// `(-inf, r]`
    pub fn left_ray(r: i64) -> Self {
        Interval {
            l: r,
            r,
            unbounded_left: true,
            unbounded_right: false,
        }
    }

    /// `[l, +inf)`
    pub fn right_ray(l: i64) -> Self {
        Interval {
            l,
            r: l,
            unbounded_left: false,
            unbounded_right: true,
        }
    }

    /// Effective left end, `i64::MIN` when unbounded.
    pub fn lo(&self) -> i64 {
        if self.unbounded_left {
            i64::MIN
        } else {
            self.l
        }
    }

    pub fn hi(&self) -> i64 {
        if self.unbounded_right {
            i64::MAX
        } else {
            self.r
        }
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo() <= other.hi() && other.lo() <= self.hi()
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo() <= other.lo() && other.hi() <= self.hi()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalModel {
    intervals: Vec<Interval>,
}

impl IntervalModel {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        for (id, iv) in intervals.iter().enumerate() {
            if iv.lo() > iv.hi() {
                return Err(Error::InvalidModel(format!(
                    "interval {id}: left end {} exceeds right end {}",
                    iv.l, iv.r
                )));
            }
        }
        Ok(IntervalModel { intervals })
    }

    pub fn from_bounded(pairs: &[(i64, i64)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(l, r)| Interval::bounded(l, r))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn interval(&self, v: VertexId) -> Interval {
        self.intervals[v]
    }

    /// Sweep over left ends: `a` and `b` with `lo(a) <= lo(b)` meet iff
    /// `lo(b) <= hi(a)`.
    pub fn intersection_graph(&self) -> Graph {
        let mut order: Vec<VertexId> = (0..self.len()).collect();
        order.sort_by_key(|&v| (self.intervals[v].lo(), v));
        let mut edges = Vec::new();
        for (i, &a) in order.iter().enumerate() {
            let hi = self.intervals[a].hi();
            for &b in &order[i + 1..] {
                if self.intervals[b].lo() > hi {
                    break;
                }
                edges.push((a, b));
            }
        }
        Graph::from_edges(self.len(), edges).expect("sweep edges are valid")
    }
}

fn fmt_end(x: i64, unbounded: bool, inf: &str) -> String {
    if unbounded {
        inf.to_string()
    } else {
        x.to_string()
    }
}

impl fmt::Display for IntervalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "intervals {}", self.len())?;
        for (id, iv) in self.intervals.iter().enumerate() {
            // a ray keeps its finite end in both fields
            let l = fmt_end(iv.l, iv.unbounded_left, "-inf");
            let r = fmt_end(iv.r, iv.unbounded_right, "+inf");
            writeln!(f, "{id} {l} {r}")?;
        }
        Ok(())
    }
}

impl FromStr for IntervalModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = parse_rows(s, "intervals", true)?;
        let intervals = rows
            .into_iter()
            .map(|(l, r)| match (l, r) {
                (Some(l), Some(r)) => Interval::bounded(l, r),
                (None, Some(r)) => Interval::left_ray(r),
                (Some(l), None) => Interval::right_ray(l),
                (None, None) => Interval {
                    l: 0,
                    r: 0,
                    unbounded_left: true,
                    unbounded_right: true,
                },
            })
            .collect();
        IntervalModel::new(intervals)
    }
}

/// Parses `keyword n` then `id l r` rows; `None` stands for an infinite end.
pub(crate) fn parse_rows(
    s: &str,
    keyword: &str,
    allow_infinite: bool,
) -> Result<Vec<(Option<i64>, Option<i64>)>> {
    let mut lines = content_lines(s);
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, format!("empty {keyword} file")))?;
    let n = parse_header(header, keyword, lineno)?;
    let mut rows = vec![None; n];
    for (lineno, line) in lines {
        let mut parts = line.split_whitespace();
        let id: usize = parse_num(parts.next(), lineno, "id")?;
        if id >= n {
            return Err(Error::parse(lineno, format!("id {id} out of range")));
        }
        let mut end = |inf: &str| -> Result<Option<i64>> {
            match parts.next() {
                Some(t) if allow_infinite && t == inf => Ok(None),
                t => parse_num(t, lineno, "endpoint").map(Some),
            }
        };
        let l = end("-inf")?;
        let r = end("+inf")?;
        if parts.next().is_some() {
            return Err(Error::parse(lineno, "trailing tokens"));
        }
        if let (Some(l), Some(r)) = (l, r) {
            if l > r {
                return Err(Error::parse(
                    lineno,
                    format!("left end {l} exceeds right end {r}"),
                ));
            }
        }
        if rows[id].is_some() {
            return Err(Error::parse(lineno, format!("duplicate id {id}")));
        }
        rows[id] = Some((l, r));
    }
    rows.into_iter()
        .enumerate()
        .map(|(id, r)| r.ok_or_else(|| Error::parse(0, format!("{keyword} row {id} missing"))))
        .collect()
}

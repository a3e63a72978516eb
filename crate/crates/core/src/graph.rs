//! Graphs, multiset token configurations and slide semantics.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type VertexId = usize;

/// Finite simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are sorted and deduplicated; the graph is immutable once
/// built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<VertexId>>,
}

impl Graph {
    /// Builds a graph from an edge list. Self-loops are rejected, parallel
    /// edges are merged.
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop on vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adjacency })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); vertex_count],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// `N[u] ⊆ N[v]` (closed neighborhoods).
    pub fn closed_neighborhood_subset(&self, u: VertexId, v: VertexId) -> bool {
        if u == v {
            return true;
        }
        if !self.has_edge(u, v) {
            return false;
        }
        self.adjacency[u]
            .iter()
            .all(|&w| w == v || self.has_edge(v, w))
    }

    /// Connected component label per vertex, plus the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adjacency[x] {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    /// Shortest path from `s` to `t` (inclusive), exploring neighbors in
    /// increasing id order so the result is deterministic.
    pub fn shortest_path(&self, s: VertexId, t: VertexId) -> Option<Vec<VertexId>> {
        let n = self.vertex_count();
        if s >= n || t >= n {
            return None;
        }
        let mut parent = vec![usize::MAX; n];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for &y in &self.adjacency[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if parent[t] == usize::MAX {
            return None;
        }
        let mut path = vec![t];
        let mut cur = t;
        while cur != s {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }

    /// Graph with every vertex whose `keep` flag is false removed; returns the
    /// induced subgraph and the old-id of each new vertex.
    pub fn induced(&self, keep: &[bool]) -> (Graph, Vec<VertexId>) {
        let old_ids: Vec<VertexId> = (0..self.vertex_count()).filter(|&v| keep[v]).collect();
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in old_ids.iter().enumerate() {
            new_id[v] = i;
        }
        let adjacency = old_ids
            .iter()
            .map(|&v| {
                self.adjacency[v]
                    .iter()
                    .filter(|&&w| keep[w])
                    .map(|&w| new_id[w])
                    .collect()
            })
            .collect();
        (Graph { adjacency }, old_ids)
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count(),
            })
        }
    }
}

/// Multiset of vertices carrying tokens, kept as a sorted id list.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TokenConfig(Vec<VertexId>);

impl TokenConfig {
    pub fn new(tokens: impl IntoIterator<Item = VertexId>) -> Self {
        let mut v: Vec<VertexId> = tokens.into_iter().collect();
        v.sort_unstable();
        TokenConfig(v)
    }

    pub(crate) fn from_sorted(tokens: Vec<VertexId>) -> Self {
        debug_assert!(tokens.windows(2).all(|w| w[0] <= w[1]));
        TokenConfig(tokens)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    /// Distinct vertices, ascending.
    pub fn support(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|&(i, v)| i == 0 || self.0[i - 1] != *v)
            .map(|(_, &v)| v)
    }

    pub fn multiplicity(&self, v: VertexId) -> usize {
        let lo = self.0.partition_point(|&x| x < v);
        let hi = self.0.partition_point(|&x| x <= v);
        hi - lo
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Replaces one copy of `from` by `to`, without any graph check.
    pub fn replace_one(&self, from: VertexId, to: VertexId) -> Option<TokenConfig> {
        let idx = self.0.binary_search(&from).ok()?;
        let mut v = self.0.clone();
        v.remove(idx);
        let at = v.partition_point(|&x| x < to);
        v.insert(at, to);
        Some(TokenConfig(v))
    }

    pub fn with(&self, extra: impl IntoIterator<Item = VertexId>) -> TokenConfig {
        TokenConfig::new(self.0.iter().copied().chain(extra))
    }

    /// Removes one copy of `v`, if present.
    pub fn without_one(&self, v: VertexId) -> Option<TokenConfig> {
        let idx = self.0.binary_search(&v).ok()?;
        let mut out = self.0.clone();
        out.remove(idx);
        Some(TokenConfig(out))
    }

    /// Multiset difference `self \ other`.
    pub fn difference(&self, other: &TokenConfig) -> TokenConfig {
        let mut out = Vec::new();
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() {
            if j < b.len() && b[j] < a[i] {
                j += 1;
            } else if j < b.len() && b[j] == a[i] {
                i += 1;
                j += 1;
            } else {
                out.push(a[i]);
                i += 1;
            }
        }
        TokenConfig(out)
    }

    pub fn max_vertex(&self) -> Option<VertexId> {
        self.0.last().copied()
    }
}

impl fmt::Display for TokenConfig {
    /// `tokens: 0 3 3`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tokens:")?;
        for v in &self.0 {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

impl FromStr for TokenConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        for (idx, raw) in s.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let rest = line
                .strip_prefix("tokens:")
                .ok_or_else(|| Error::parse(idx + 1, "expected `tokens:` line"))?;
            return parse_ids(rest, idx + 1).map(TokenConfig::new);
        }
        Err(Error::parse(1, "missing `tokens:` line"))
    }
}

fn parse_ids(s: &str, line: usize) -> Result<Vec<VertexId>> {
    s.split_whitespace()
        .map(|t| {
            t.parse::<VertexId>()
                .map_err(|_| Error::parse(line, format!("bad vertex id `{t}`")))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlideMove {
    pub from: VertexId,
    pub to: VertexId,
}

impl SlideMove {
    pub fn new(from: VertexId, to: VertexId) -> Self {
        SlideMove { from, to }
    }

    pub fn reversed(self) -> Self {
        SlideMove {
            from: self.to,
            to: self.from,
        }
    }
}

impl fmt::Display for SlideMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "slide {} {}", self.from, self.to)
    }
}

/// A start configuration followed by slide moves.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReconfSequence {
    pub start: TokenConfig,
    pub moves: Vec<SlideMove>,
}

impl ReconfSequence {
    pub fn new(start: TokenConfig, moves: Vec<SlideMove>) -> Self {
        ReconfSequence { start, moves }
    }

    pub fn empty(start: TokenConfig) -> Self {
        ReconfSequence {
            start,
            moves: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Every configuration along the sequence (start included), without any
    /// edge or domination check. Stops early if a move has no token to slide.
    pub fn configs(&self) -> Vec<TokenConfig> {
        let mut out = vec![self.start.clone()];
        let mut cur = self.start.clone();
        for m in &self.moves {
            match cur.replace_one(m.from, m.to) {
                Some(next) => {
                    out.push(next.clone());
                    cur = next;
                }
                None => break,
            }
        }
        out
    }

    /// Final configuration, assuming every move has a token to slide.
    pub fn end(&self) -> TokenConfig {
        self.configs().pop().unwrap_or_default()
    }

    pub fn extend(&mut self, moves: impl IntoIterator<Item = SlideMove>) {
        self.moves.extend(moves);
    }
}

impl fmt::Display for ReconfSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "start:")?;
        for v in self.start.iter() {
            write!(f, " {v}")?;
        }
        writeln!(f)?;
        for m in &self.moves {
            writeln!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for ReconfSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut start = None;
        let mut moves = Vec::new();
        for (idx, raw) in s.lines().enumerate() {
            let line = raw.trim();
            let lineno = idx + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("start:") {
                if start.is_some() {
                    return Err(Error::parse(lineno, "duplicate `start:` line"));
                }
                start = Some(TokenConfig::new(parse_ids(rest, lineno)?));
                continue;
            }
            if start.is_none() {
                return Err(Error::parse(lineno, "expected `start:` before moves"));
            }
            let mut parts = line.split_whitespace();
            if parts.next() != Some("slide") {
                return Err(Error::parse(lineno, "expected `slide FROM TO`"));
            }
            let ids = parse_ids(&parts.collect::<Vec<_>>().join(" "), lineno)?;
            if ids.len() != 2 {
                return Err(Error::parse(lineno, "expected `slide FROM TO`"));
            }
            moves.push(SlideMove::new(ids[0], ids[1]));
        }
        let start = start.ok_or_else(|| Error::parse(1, "missing `start:` line"))?;
        Ok(ReconfSequence { start, moves })
    }
}

/// Bitmap of vertices dominated by `c`.
pub(crate) fn dominated_by(g: &Graph, tokens: impl IntoIterator<Item = VertexId>) -> Vec<bool> {
    let mut dom = vec![false; g.vertex_count()];
    for v in tokens {
        dom[v] = true;
        for &w in g.neighbors(v) {
            dom[w] = true;
        }
    }
    dom
}

pub fn is_dominating(g: &Graph, c: &TokenConfig) -> Result<bool> {
    for v in c.support() {
        g.check_vertex(v)?;
    }
    Ok(is_dominating_unchecked(g, c.as_slice()))
}

pub(crate) fn is_dominating_unchecked(g: &Graph, tokens: &[VertexId]) -> bool {
    dominated_by(g, tokens.iter().copied())
        .into_iter()
        .all(|d| d)
}

/// Vertices not dominated by `c`, ascending.
pub fn undominated(g: &Graph, c: &TokenConfig) -> Vec<VertexId> {
    dominated_by(g, c.iter())
        .into_iter()
        .enumerate()
        .filter(|&(_, d)| !d)
        .map(|(v, _)| v)
        .collect()
}

pub fn apply_slide(g: &Graph, c: &TokenConfig, m: SlideMove) -> Result<TokenConfig> {
    g.check_vertex(m.from)?;
    g.check_vertex(m.to)?;
    if !c.contains(m.from) {
        return Err(Error::NoToken(m.from));
    }
    if m.from == m.to || !g.has_edge(m.from, m.to) {
        return Err(Error::IllegalMove {
            from: m.from,
            to: m.to,
        });
    }
    Ok(c.replace_one(m.from, m.to).expect("token presence checked"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureKind {
    /// The move could not be applied.
    Move(Error),
    /// The configuration reached at this point is not dominating.
    NotDominating { undominated: Vec<VertexId> },
}

/// First failing position of a sequence. `index` 0 is the start
/// configuration, index `i >= 1` is the configuration after move `i - 1`
/// (or that move itself for [`FailureKind::Move`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceFailure {
    pub index: usize,
    pub kind: FailureKind,
}

impl fmt::Display for SequenceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FailureKind::Move(e) => write!(f, "move {}: {e}", self.index),
            FailureKind::NotDominating { undominated } => write!(
                f,
                "configuration {} is not dominating (undominated: {:?})",
                self.index, undominated
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceReport {
    pub failure: Option<SequenceFailure>,
    pub end: TokenConfig,
}

impl SequenceReport {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

/// Replays `s` on `g`, checking every move and (optionally) that every
/// configuration including both endpoints dominates `g`.
pub fn validate_sequence(
    g: &Graph,
    s: &ReconfSequence,
    require_domination: bool,
) -> SequenceReport {
    let fail = |index, kind, end: &TokenConfig| SequenceReport {
        failure: Some(SequenceFailure { index, kind }),
        end: end.clone(),
    };
    let mut cur = s.start.clone();
    for v in cur.support() {
        if let Err(e) = g.check_vertex(v) {
            return fail(0, FailureKind::Move(e), &cur);
        }
    }
    // per-vertex count of tokens in its closed neighborhood, so each move
    // costs O(deg(from) + deg(to)) instead of a full domination check
    let mut count = vec![0usize; g.vertex_count()];
    let mut missing = g.vertex_count();
    let bump = |count: &mut [usize], missing: &mut usize, v: VertexId, up: bool| {
        for w in std::iter::once(v).chain(g.neighbors(v).iter().copied()) {
            if up {
                count[w] += 1;
                if count[w] == 1 {
                    *missing -= 1;
                }
            } else {
                count[w] -= 1;
                if count[w] == 0 {
                    *missing += 1;
                }
            }
        }
    };
    for v in cur.iter() {
        bump(&mut count, &mut missing, v, true);
    }
    if require_domination && missing > 0 {
        let undominated = undominated(g, &cur);
        return fail(0, FailureKind::NotDominating { undominated }, &cur);
    }
    for (i, &m) in s.moves.iter().enumerate() {
        cur = match apply_slide(g, &cur, m) {
            Ok(next) => next,
            Err(e) => return fail(i + 1, FailureKind::Move(e), &cur),
        };
        bump(&mut count, &mut missing, m.to, true);
        bump(&mut count, &mut missing, m.from, false);
        if require_domination && missing > 0 {
            let undominated = undominated(g, &cur);
            return fail(i + 1, FailureKind::NotDominating { undominated }, &cur);
        }
    }
    SequenceReport {
        failure: None,
        end: cur,
    }
}

/// Plain edge-list format: `graph n` followed by `u v` lines.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = crate::io::content_lines(text);
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty graph file"))?;
    let n = crate::io::parse_header(header, "graph", lineno)?;
    let mut edges = Vec::new();
    for (lineno, line) in lines {
        let ids = parse_ids(line, lineno)?;
        if ids.len() != 2 {
            return Err(Error::parse(lineno, "expected `u v`"));
        }
        if ids[0] >= n || ids[1] >= n {
            return Err(Error::parse(lineno, "vertex id out of range"));
        }
        edges.push((ids[0], ids[1]));
    }
    Graph::from_edges(n, edges).map_err(|e| Error::parse(0, e.to_string()))
}

pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("graph {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
pub(crate) fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_domination() {
        let g = cycle(6);
        assert!(is_dominating(&g, &TokenConfig::new([0, 3])).unwrap());
        assert!(!is_dominating(&g, &TokenConfig::new([1, 3])).unwrap());
        assert_eq!(undominated(&g, &TokenConfig::new([1, 3])), vec![5]);
    }

    #[test]
    fn single_vertex_graph() {
        let g = Graph::empty(1);
        assert!(is_dominating(&g, &TokenConfig::new([0])).unwrap());
    }

    #[test]
    fn out_of_range_token() {
        let g = cycle(6);
        assert!(matches!(
            is_dominating(&g, &TokenConfig::new([0, 9])),
            Err(Error::VertexOutOfRange { vertex: 9, .. })
        ));
    }

    #[test]
    fn slide_basics() {
        let g = cycle(6);
        let c = TokenConfig::new([0, 3]);
        assert_eq!(
            apply_slide(&g, &c, SlideMove::new(0, 1)).unwrap(),
            TokenConfig::new([1, 3])
        );
        assert_eq!(
            apply_slide(&g, &c, SlideMove::new(0, 2)),
            Err(Error::IllegalMove { from: 0, to: 2 })
        );
        assert_eq!(
            apply_slide(&g, &c, SlideMove::new(1, 2)),
            Err(Error::NoToken(1))
        );
    }

    #[test]
    fn slide_multiset() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let c = TokenConfig::new([0, 0]);
        assert_eq!(
            apply_slide(&g, &c, SlideMove::new(0, 1)).unwrap(),
            TokenConfig::new([0, 1])
        );
    }

    #[test]
    fn validate_examples() {
        let g = cycle(6);
        let s = ReconfSequence::empty(TokenConfig::new([0, 3]));
        assert!(validate_sequence(&g, &s, true).is_valid());

        let s = ReconfSequence::new(TokenConfig::new([0, 3]), vec![SlideMove::new(0, 1)]);
        let report = validate_sequence(&g, &s, true);
        assert_eq!(
            report.failure,
            Some(SequenceFailure {
                index: 1,
                kind: FailureKind::NotDominating {
                    undominated: vec![5]
                }
            })
        );

        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let s = ReconfSequence::new(
            TokenConfig::new([1]),
            vec![SlideMove::new(1, 0), SlideMove::new(0, 1)],
        );
        assert!(validate_sequence(&path, &s, false).is_valid());
        // the same walk loses vertex 2 when the token sits on 0
        assert!(!validate_sequence(&path, &s, true).is_valid());
    }

    #[test]
    fn graph_rejects_bad_edges() {
        assert!(Graph::from_edges(2, [(0, 0)]).is_err());
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn multiset_ops() {
        let a = TokenConfig::new([3, 1, 1, 2]);
        assert_eq!(a.as_slice(), &[1, 1, 2, 3]);
        assert_eq!(a.multiplicity(1), 2);
        assert_eq!(a.support().collect::<Vec<_>>(), vec![1, 2, 3]);
        let b = TokenConfig::new([1, 3, 4]);
        assert_eq!(a.difference(&b), TokenConfig::new([1, 2]));
    }

    #[test]
    fn text_formats() {
        let c: TokenConfig = "tokens: 4 0 0".parse().unwrap();
        assert_eq!(c, TokenConfig::new([0, 0, 4]));
        assert_eq!(c.to_string(), "tokens: 0 0 4");
        let s: ReconfSequence = "start: 0 3\nslide 0 1\nslide 3 4\n".parse().unwrap();
        assert_eq!(s.moves, vec![SlideMove::new(0, 1), SlideMove::new(3, 4)]);
        assert_eq!(s.to_string().parse::<ReconfSequence>().unwrap(), s);
        assert!("slide 0 1".parse::<ReconfSequence>().is_err());
        assert!("tokens 0 1".parse::<TokenConfig>().is_err());
    }

    #[test]
    fn graph_format_roundtrip() {
        let g = cycle(5);
        assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
    }
}

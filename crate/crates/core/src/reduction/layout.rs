//! Chord layout of the reduction graph `G_F`, built on a [`SymbolicLine`].

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::geom::{ChordModel, Handle, SymbolicLine};
use crate::graph::{Graph, VertexId};
use crate::reduction::cnf::CnfFormula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PathKind {
    T,
    U,
    V,
    W,
}

impl PathKind {
    pub const ALL: [PathKind; 4] = [PathKind::T, PathKind::U, PathKind::V, PathKind::W];

    fn name(self) -> &'static str {
        match self {
            PathKind::T => "T",
            PathKind::U => "U",
            PathKind::V => "V",
            PathKind::W => "W",
        }
    }
}

/// Intervals that receive a dead-end. Indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Host {
    Bridge {
        var: usize,
        idx: usize,
        positive: bool,
    },
    /// A `U` or `W` path interval (either polarity).
    Path {
        kind: PathKind,
        var: usize,
        clause: usize,
        positive: bool,
    },
}

impl Host {
    pub fn role(self) -> Role {
        match self {
            Host::Bridge { var, idx, positive } => Role::Bridge { var, idx, positive },
            Host::Path {
                kind,
                var,
                clause,
                positive,
            } => Role::Path {
                kind,
                var,
                clause,
                positive,
            },
        }
    }
}

/// Semantic name of each interval. Indices are 0-based; labels are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Base {
        var: usize,
        pos: usize,
    },
    Bridge {
        var: usize,
        idx: usize,
        positive: bool,
    },
    Clause {
        clause: usize,
        twin: bool,
    },
    Path {
        kind: PathKind,
        var: usize,
        clause: usize,
        positive: bool,
    },
    DeadEnd {
        host: Host,
    },
    Pending {
        host: Host,
        index: usize,
    },
    Junction,
}

impl Role {
    /// Variable owning this interval, for base, bridge and path intervals.
    pub fn variable(&self) -> Option<usize> {
        match *self {
            Role::Base { var, .. } | Role::Bridge { var, .. } | Role::Path { var, .. } => Some(var),
            _ => None,
        }
    }

    pub fn is_w(&self) -> bool {
        matches!(
            self,
            Role::Path {
                kind: PathKind::W,
                ..
            }
        )
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bar = |positive: bool| if positive { "" } else { "bar" };
        match *self {
            Role::Base { var, pos } => write!(f, "B_{}^{}", pos + 1, var + 1),
            Role::Bridge { var, idx, positive } => {
                write!(f, "X{}_{}^{}", bar(positive), idx + 1, var + 1)
            }
            Role::Clause { clause, twin } => {
                write!(f, "C{}_{}", if twin { "'" } else { "" }, clause + 1)
            }
            Role::Path {
                kind,
                var,
                clause,
                positive,
            } => write!(
                f,
                "{}{}_{}^{}",
                kind.name(),
                bar(positive),
                clause + 1,
                var + 1
            ),
            Role::DeadEnd { host } => write!(f, "dead({})", host.role()),
            Role::Pending { host, index } => write!(f, "pend({})#{}", host.role(), index + 1),
            Role::Junction => write!(f, "J"),
        }
    }
}

/// Size parameters of a layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionParams {
    pub n: usize,
    /// Number of clauses, a multiple of 4.
    pub m: usize,
    pub q: usize,
    /// Number of clauses containing `x_i` or its negation.
    pub ell: Vec<usize>,
    /// Token budget `3mn/2 + 3 * sum(ell) + 1`.
    pub k: usize,
    pub pending_count: usize,
}

impl ReductionParams {
    pub fn new(f: &CnfFormula, pending_count: Option<usize>) -> Result<Self> {
        let (n, m) = (f.num_vars(), f.num_clauses());
        if m == 0 || m % 4 != 0 {
            return Err(Error::InvalidInput(format!(
                "clause count {m} is not a positive multiple of 4"
            )));
        }
        let ell: Vec<usize> = f.occurrences().iter().map(|o| o[0] + o[1]).collect();
        if let Some(i) = ell.iter().position(|&l| l == 0) {
            return Err(Error::InvalidInput(format!(
                "variable x{} occurs in no clause (the reduction graph would be disconnected)",
                i + 1
            )));
        }
        let k = 3 * m * n / 2 + 3 * ell.iter().sum::<usize>() + 1;
        let pending_count = pending_count.unwrap_or(6 * m * n);
        Ok(ReductionParams {
            n,
            m,
            q: m / 4,
            ell,
            k,
            pending_count,
        })
    }

    /// Number of dead-end intervals: one per bridge, `U` and `W` interval.
    pub fn dead_end_count(&self) -> usize {
        self.m * self.n + 2 * self.ell.iter().sum::<usize>()
    }

    pub fn vertex_count(&self) -> usize {
        let occ: usize = self.ell.iter().sum();
        self.m * self.n // base
            + self.m * self.n // bridges
            + 2 * self.m // clauses
            + 4 * occ // paths
            + self.dead_end_count() * (1 + self.pending_count)
            + 1
    }
}

impl fmt::Display for ReductionParams {
    /// Key-value lines: `n`, `m`, `q`, `K`, `pending_count`, then `ell i value`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        writeln!(f, "m {}", self.m)?;
        writeln!(f, "q {}", self.q)?;
        writeln!(f, "K {}", self.k)?;
        writeln!(f, "pending_count {}", self.pending_count)?;
        for (i, l) in self.ell.iter().enumerate() {
            writeln!(f, "ell {} {l}", i + 1)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for ReductionParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use crate::io::{content_lines, parse_num};
        let mut fields: HashMap<&str, usize> = HashMap::new();
        let mut ell = Vec::new();
        for (lineno, line) in content_lines(s) {
            let mut parts = line.split_whitespace();
            let key = parts.next().unwrap_or_default();
            if key == "ell" {
                let i: usize = parse_num(parts.next(), lineno, "variable")?;
                let v: usize = parse_num(parts.next(), lineno, "value")?;
                if i != ell.len() + 1 {
                    return Err(Error::parse(lineno, "ell lines must be in variable order"));
                }
                ell.push(v);
            } else {
                let v: usize = parse_num(parts.next(), lineno, key)?;
                fields.insert(key, v);
            }
        }
        let get = |k: &str| {
            fields
                .get(k)
                .copied()
                .ok_or_else(|| Error::parse(0, format!("params: missing `{k}`")))
        };
        Ok(ReductionParams {
            n: get("n")?,
            m: get("m")?,
            q: get("q")?,
            ell,
            k: get("K")?,
            pending_count: get("pending_count")?,
        })
    }
}

/// The chord model of `G_F` with role annotations.
#[derive(Debug, Clone)]
pub struct ReductionLayout {
    formula: CnfFormula,
    params: ReductionParams,
    chords: ChordModel,
    roles: Vec<Role>,
    index: HashMap<Role, VertexId>,
    graph: Graph,
}

impl ReductionLayout {
    /// Assembles a layout from chords and their roles (one role per chord).
    pub fn from_parts(
        formula: CnfFormula,
        params: ReductionParams,
        chords: ChordModel,
        roles: Vec<Role>,
    ) -> Result<Self> {
        if chords.len() != roles.len() {
            return Err(Error::InvalidInput(format!(
                "{} chords but {} roles",
                chords.len(),
                roles.len()
            )));
        }
        let mut index = HashMap::with_capacity(roles.len());
        for (v, &role) in roles.iter().enumerate() {
            if index.insert(role, v).is_some() {
                return Err(Error::InvalidInput(format!("role {role} appears twice")));
            }
        }
        let graph = chords.overlap_graph();
        Ok(ReductionLayout {
            formula,
            params,
            chords,
            roles,
            index,
            graph,
        })
    }

    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }

    pub fn params(&self) -> &ReductionParams {
        &self.params
    }

    pub fn chords(&self) -> &ChordModel {
        &self.chords
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn role(&self, v: VertexId) -> Role {
        self.roles[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.roles.len()
    }

    pub fn id(&self, role: Role) -> Option<VertexId> {
        self.index.get(&role).copied()
    }

    /// Like [`id`](Self::id) for roles the construction always creates.
    pub(crate) fn expect_id(&self, role: Role) -> VertexId {
        self.id(role)
            .unwrap_or_else(|| panic!("layout has no interval {role}"))
    }

    pub fn label(&self, v: VertexId) -> String {
        self.roles[v].to_string()
    }

    pub fn lookup(&self, label: &str) -> Option<VertexId> {
        // labels are unique, so a linear scan is only a convenience path
        self.roles.iter().position(|r| r.to_string() == label)
    }

    /// `label id` per line, in id order.
    pub fn registry(&self) -> String {
        let mut out = String::new();
        for (v, r) in self.roles.iter().enumerate() {
            out.push_str(&format!("{r} {v}\n"));
        }
        out
    }

    /// Ids of the intervals of variable `var` (base, bridge and path).
    pub fn variable_intervals(&self, var: usize) -> Vec<VertexId> {
        (0..self.vertex_count())
            .filter(|&v| self.roles[v].variable() == Some(var))
            .collect()
    }

    pub fn dead_ends(&self) -> Vec<VertexId> {
        (0..self.vertex_count())
            .filter(|&v| matches!(self.roles[v], Role::DeadEnd { .. }))
            .collect()
    }

    pub fn junction(&self) -> VertexId {
        self.expect_id(Role::Junction)
    }

    pub fn bridge(&self, var: usize, idx: usize, positive: bool) -> VertexId {
        self.expect_id(Role::Bridge { var, idx, positive })
    }

    pub fn path(&self, kind: PathKind, var: usize, clause: usize, positive: bool) -> VertexId {
        self.expect_id(Role::Path {
            kind,
            var,
            clause,
            positive,
        })
    }

    /// Copy of the layout without vertex `v` (ids above `v` shift down).
    pub fn without_vertex(&self, v: VertexId) -> Result<ReductionLayout> {
        if v >= self.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count(),
            });
        }
        let mut chords = self.chords.intervals().to_vec();
        let mut roles = self.roles.clone();
        chords.remove(v);
        roles.remove(v);
        ReductionLayout::from_parts(
            self.formula.clone(),
            self.params.clone(),
            ChordModel::new(chords)?,
            roles,
        )
    }
}

struct Builder {
    line: SymbolicLine,
    ends: Vec<(Handle, Handle)>,
    roles: Vec<Role>,
}

impl Builder {
    fn add(&mut self, role: Role, l: Handle, r: Handle) -> (Handle, Handle) {
        self.ends.push((l, r));
        self.roles.push(role);
        (l, r)
    }

    fn frame_point(&mut self, p: Handle) -> Result<(Handle, Handle)> {
        self.line.frame(&[p])
    }
}

/// Builds `G_F` for a formula whose clause count is a multiple of 4 and in
/// which every variable occurs. `pending_count` defaults to `6mn`.
pub fn build_reduction(f: &CnfFormula, pending_count: Option<usize>) -> Result<ReductionLayout> {
    let params = ReductionParams::new(f, pending_count)?;
    let (n, m, q) = (params.n, params.m, params.q);
    let mut b = Builder {
        line: SymbolicLine::new(),
        ends: Vec::new(),
        roles: Vec::new(),
    };

    // base intervals, then a gap point after the last base of each variable
    let mut base = vec![Vec::with_capacity(m); n];
    let mut gap = Vec::with_capacity(n);
    for (var, bases) in base.iter_mut().enumerate() {
        for pos in 0..m {
            let l = b.line.push_back();
            let r = b.line.push_back();
            bases.push(b.add(Role::Base { var, pos }, l, r));
        }
        gap.push(b.line.push_back());
    }
    // clause points: left end, shared point for the W intervals, right end
    let clause_pts: Vec<(Handle, Handle, Handle)> = (0..m)
        .map(|_| {
            let l = b.line.push_back();
            let p = b.line.push_back();
            let r = b.line.push_back();
            (l, p, r)
        })
        .collect();

    // bridges; `pos_end[var][j]` / `neg_end[var][j]` is the bridge endpoint
    // lying in base j
    let mut pos_end = vec![vec![None; m]; n];
    let mut neg_end = vec![vec![None; m]; n];
    let mut bridge_hosts = Vec::new();
    for var in 0..n {
        let lb = |j: usize| base[var][j - 1].0;
        let rb = |j: usize| base[var][j - 1].1;
        let mut negative = Vec::new();
        for r in 0..q {
            negative.push((2 * r + 1, 4 * r + 1, 4 * r + 3));
            negative.push((2 * r + 2, 4 * r + 2, 4 * r + 4));
        }
        for (idx, from, to) in negative {
            let l = b.line.insert_right(lb(from))?;
            let r = b.line.insert_right(lb(to))?;
            b.add(
                Role::Bridge {
                    var,
                    idx: idx - 1,
                    positive: false,
                },
                l,
                r,
            );
            neg_end[var][from - 1] = Some(l);
            neg_end[var][to - 1] = Some(r);
            bridge_hosts.push(Host::Bridge {
                var,
                idx: idx - 1,
                positive: false,
            });
        }
        let mut positive = vec![(1, 1, 2)];
        for r in 1..q {
            positive.push((2 * r, 4 * r - 1, 4 * r + 1));
            positive.push((2 * r + 1, 4 * r, 4 * r + 2));
        }
        positive.push((m / 2, m - 1, m));
        for (idx, from, to) in positive {
            let l = b.line.insert_left(rb(from))?;
            let r = b.line.insert_left(rb(to))?;
            b.add(
                Role::Bridge {
                    var,
                    idx: idx - 1,
                    positive: true,
                },
                l,
                r,
            );
            pos_end[var][from - 1] = Some(l);
            pos_end[var][to - 1] = Some(r);
            bridge_hosts.push(Host::Bridge {
                var,
                idx: idx - 1,
                positive: true,
            });
        }
    }

    for (clause, &(l, _, r)) in clause_pts.iter().enumerate() {
        b.add(
            Role::Clause {
                clause,
                twin: false,
            },
            l,
            r,
        );
        b.add(Role::Clause { clause, twin: true }, l, r);
    }

    // path intervals, by variable then clause
    let mut path_hosts = Vec::new();
    for var in 0..n {
        for (clause, lits) in f.clauses().iter().enumerate() {
            let Some(lit) = lits.iter().find(|l| l.var == var) else {
                continue;
            };
            let positive = lit.positive;
            let role = |kind| Role::Path {
                kind,
                var,
                clause,
                positive,
            };
            let (lb, rb) = base[var][clause];
            let u = if positive {
                let end = pos_end[var][clause].expect("every base holds a positive bridge end");
                let t = (b.line.insert_left(end)?, b.line.insert_right(rb)?);
                b.add(role(PathKind::T), t.0, t.1);
                let l = b.line.insert_left(t.1)?;
                let r = b.line.insert_left(gap[var])?;
                b.add(role(PathKind::U), l, r)
            } else {
                let end = neg_end[var][clause].expect("every base holds a negative bridge end");
                let t = (b.line.insert_left(lb)?, b.line.insert_right(end)?);
                b.add(role(PathKind::T), t.0, t.1);
                let l = b.line.insert_right(t.0)?;
                let r = b.line.insert_left(gap[var])?;
                b.add(role(PathKind::U), l, r)
            };
            let v = b.frame_point(u.1)?;
            b.add(role(PathKind::V), v.0, v.1);
            let w_left = b.line.insert_left(v.1)?;
            b.add(role(PathKind::W), w_left, clause_pts[clause].1);
            for kind in [PathKind::U, PathKind::W] {
                path_hosts.push(Host::Path {
                    kind,
                    var,
                    clause,
                    positive,
                });
            }
        }
    }

    // dead-ends frame the left end of their host; pending intervals are
    // nested frames around the left end of their dead-end
    let hosts: Vec<Host> = bridge_hosts.into_iter().chain(path_hosts).collect();
    let index: HashMap<Role, usize> = b.roles.iter().enumerate().map(|(v, &r)| (r, v)).collect();
    let mut dead_left = Vec::with_capacity(hosts.len());
    for &host in &hosts {
        let host_left = b.ends[index[&host.role()]].0;
        let d = b.frame_point(host_left)?;
        b.add(Role::DeadEnd { host }, d.0, d.1);
        dead_left.push(d.0);
    }
    for (&host, &dl) in hosts.iter().zip(&dead_left) {
        for index in 0..params.pending_count {
            let p = b.frame_point(dl)?;
            b.add(Role::Pending { host, index }, p.0, p.1);
        }
    }

    let j = b.line.frame(&[clause_pts[0].0, clause_pts[m - 1].2])?;
    b.add(Role::Junction, j.0, j.1);

    let x = b.line.finalize();
    let chords = ChordModel::new(
        b.ends
            .iter()
            .map(|&(l, r)| (x[l.index()], x[r.index()]))
            .collect(),
    )?;
    debug_assert_eq!(chords.len(), params.vertex_count());
    ReductionLayout::from_parts(f.clone(), params, chords, b.roles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::cnf::figure_formula;

    #[test]
    fn figure_parameters() {
        let l = build_reduction(&figure_formula(), None).unwrap();
        let p = l.params();
        assert_eq!((p.n, p.m, p.q), (2, 4, 1));
        assert_eq!(p.ell, vec![4, 3]);
        assert_eq!(p.k, 34);
        assert_eq!(p.pending_count, 48);
        assert_eq!(p.dead_end_count(), 22);
        // 8 base + 8 bridge + 8 clause + 28 path + 22 dead-end + 1056 pending + J
        assert_eq!(l.vertex_count(), 1131);
        let count = |pred: fn(&Role) -> bool| l.roles().iter().filter(|r| pred(r)).count();
        assert_eq!(count(|r| matches!(r, Role::Base { .. })), 8);
        assert_eq!(count(|r| matches!(r, Role::Bridge { .. })), 8);
        assert_eq!(count(|r| matches!(r, Role::Clause { .. })), 8);
        assert_eq!(count(|r| matches!(r, Role::Path { .. })), 28);
        assert_eq!(count(|r| matches!(r, Role::DeadEnd { .. })), 22);
        assert_eq!(count(|r| matches!(r, Role::Pending { .. })), 1056);
    }

    #[test]
    fn junction_neighborhood() {
        let l = build_reduction(&figure_formula(), None).unwrap();
        let mut nbrs: Vec<String> = l
            .graph()
            .neighbors(l.junction())
            .iter()
            .map(|&v| l.label(v))
            .collect();
        nbrs.sort();
        assert_eq!(
            nbrs,
            vec!["W_1^1", "W_1^2", "W_3^1", "W_4^1", "Wbar_2^1", "Wbar_2^2", "Wbar_4^2"]
        );
    }

    #[test]
    fn labels() {
        let l = build_reduction(&figure_formula(), Some(2)).unwrap();
        for label in [
            "B_1^1",
            "X_2^1",
            "Xbar_1^2",
            "C_3",
            "C'_3",
            "Tbar_2^1",
            "dead(X_1^1)",
            "pend(Wbar_4^2)#2",
            "J",
        ] {
            let v = l.lookup(label).unwrap_or_else(|| panic!("{label}"));
            assert_eq!(l.label(v), label);
        }
        assert!(l.registry().lines().count() == l.vertex_count());
    }

    #[test]
    fn deterministic() {
        let a = build_reduction(&figure_formula(), None).unwrap();
        let b = build_reduction(&figure_formula(), None).unwrap();
        assert_eq!(a.chords(), b.chords());
        assert_eq!(a.registry(), b.registry());
    }

    #[test]
    fn rejects_unused_variable() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1], &[1], &[1], &[1]]).unwrap();
        assert!(build_reduction(&f, None).is_err());
        let f = CnfFormula::from_dimacs_clauses(1, &[&[1]]).unwrap();
        assert!(build_reduction(&f, None).is_err());
    }

    #[test]
    fn params_roundtrip() {
        let l = build_reduction(&figure_formula(), None).unwrap();
        let text = l.params().to_string();
        assert!(text.contains("K 34\n"));
        assert_eq!(text.parse::<ReductionParams>().unwrap(), *l.params());
    }
}

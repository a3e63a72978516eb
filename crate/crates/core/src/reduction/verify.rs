//! Structural checks on a built layout.

use std::collections::BTreeSet;
use std::fmt;

use super::layout::{Host, PathKind, ReductionLayout, Role};
use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureCheck {
    pub name: &'static str,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub checks: Vec<StructureCheck>,
}

impl StructureReport {
    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(|c| c.failures.is_empty())
    }

    pub fn check(&self, name: &str) -> Option<&StructureCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> impl Iterator<Item = &StructureCheck> {
        self.checks.iter().filter(|c| !c.failures.is_empty())
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.failures.is_empty() { "ok" } else { "FAIL" };
            writeln!(f, "{:<20} {status}", c.name)?;
            for msg in c.failures.iter().take(5) {
                writeln!(f, "  {msg}")?;
            }
            if c.failures.len() > 5 {
                writeln!(f, "  ... {} more", c.failures.len() - 5)?;
            }
        }
        Ok(())
    }
}

struct Checker<'a> {
    l: &'a ReductionLayout,
    checks: Vec<StructureCheck>,
}

impl Checker<'_> {
    fn run(&mut self, name: &'static str, f: impl FnOnce(&ReductionLayout, &mut Vec<String>)) {
        let mut failures = Vec::new();
        f(self.l, &mut failures);
        self.checks.push(StructureCheck { name, failures });
    }
}

fn nbr_set(l: &ReductionLayout, v: VertexId) -> BTreeSet<VertexId> {
    l.graph().neighbors(v).iter().copied().collect()
}

fn expect_nbrs(
    l: &ReductionLayout,
    v: VertexId,
    want: impl IntoIterator<Item = VertexId>,
    out: &mut Vec<String>,
) {
    let want: BTreeSet<VertexId> = want.into_iter().collect();
    let got = nbr_set(l, v);
    if got != want {
        let names =
            |s: &BTreeSet<VertexId>| s.iter().map(|&x| l.label(x)).collect::<Vec<_>>().join(",");
        out.push(format!(
            "N({}) = {{{}}}, expected {{{}}}",
            l.label(v),
            names(&got),
            names(&want)
        ));
    }
}

/// Occurrences `(var, clause, positive)` in layout order.
fn occurrences(l: &ReductionLayout) -> Vec<(usize, usize, bool)> {
    l.roles()
        .iter()
        .filter_map(|r| match *r {
            Role::Path {
                kind: PathKind::T,
                var,
                clause,
                positive,
            } => Some((var, clause, positive)),
            _ => None,
        })
        .collect()
}

/// The bridge of the given polarity with an endpoint inside base `(var, pos)`.
fn bridge_in_base(l: &ReductionLayout, var: usize, pos: usize, positive: bool) -> Vec<VertexId> {
    let b = l.expect_id(Role::Base { var, pos });
    l.graph()
        .neighbors(b)
        .iter()
        .copied()
        .filter(|&x| matches!(l.role(x), Role::Bridge { positive: p, .. } if p == positive))
        .collect()
}

/// Runs every structural check and reports the failures of each.
pub fn verify_structure(l: &ReductionLayout) -> StructureReport {
    let mut c = Checker {
        l,
        checks: Vec::new(),
    };
    let p = l.params().clone();

    // everything below looks intervals up by role, so stop early when the
    // skeleton (all but the pending intervals) is incomplete
    c.run("skeleton", |l, out| {
        for role in skeleton_roles(l) {
            if l.id(role).is_none() {
                out.push(format!("missing {role}"));
            }
        }
    });
    if !c.checks[0].failures.is_empty() {
        return StructureReport { checks: c.checks };
    }

    c.run("vertex_count", |l, out| {
        if l.vertex_count() != p.vertex_count() {
            out.push(format!(
                "{} intervals, expected {}",
                l.vertex_count(),
                p.vertex_count()
            ));
        }
        let sum: usize = p.ell.iter().sum();
        if p.k != 3 * p.m * p.n / 2 + 3 * sum + 1 {
            out.push(format!("K = {} does not match the parameters", p.k));
        }
    });

    c.run("bases_independent", |l, out| {
        let bases: Vec<VertexId> = (0..l.vertex_count())
            .filter(|&v| matches!(l.role(v), Role::Base { .. }))
            .collect();
        for (i, &a) in bases.iter().enumerate() {
            for &b in &bases[i + 1..] {
                if l.graph().has_edge(a, b) {
                    out.push(format!("{} ~ {}", l.label(a), l.label(b)));
                }
            }
        }
    });

    c.run("base_bridges", |l, out| {
        for var in 0..p.n {
            for pos in 0..p.m {
                for positive in [true, false] {
                    let found = bridge_in_base(l, var, pos, positive);
                    let own = found.len() == 1 && l.role(found[0]).variable() == Some(var);
                    if !own {
                        out.push(format!(
                            "B_{}^{} meets {} {} bridges",
                            pos + 1,
                            var + 1,
                            found.len(),
                            if positive { "positive" } else { "negative" }
                        ));
                    }
                }
            }
        }
    });

    c.run("bridge_pattern", |l, out| {
        for var in 0..p.n {
            for j in 0..p.m / 2 {
                let xbar = l.bridge(var, j, false);
                let got: BTreeSet<VertexId> = l
                    .graph()
                    .neighbors(xbar)
                    .iter()
                    .copied()
                    .filter(|&x| matches!(l.role(x), Role::Bridge { positive: true, .. }))
                    .collect();
                let want: BTreeSet<VertexId> = if j == 0 {
                    BTreeSet::new()
                } else {
                    [l.bridge(var, j - 1, true), l.bridge(var, j, true)].into()
                };
                if got != want {
                    out.push(format!(
                        "{} has positive bridge neighbours {got:?}",
                        l.label(xbar)
                    ));
                }
            }
        }
    });

    c.run("t_neighbourhoods", |l, out| {
        for (var, clause, positive) in occurrences(l) {
            let t = l.path(PathKind::T, var, clause, positive);
            let mut want = bridge_in_base(l, var, clause, positive);
            want.push(l.expect_id(Role::Base { var, pos: clause }));
            want.push(l.path(PathKind::U, var, clause, positive));
            expect_nbrs(l, t, want, out);
        }
    });

    c.run("v_neighbourhoods", |l, out| {
        for (var, clause, positive) in occurrences(l) {
            let v = l.path(PathKind::V, var, clause, positive);
            let want = [PathKind::U, PathKind::W].map(|k| l.path(k, var, clause, positive));
            expect_nbrs(l, v, want, out);
        }
    });

    let w_of_clause = |l: &ReductionLayout, j: usize| -> Vec<VertexId> {
        occurrences(l)
            .into_iter()
            .filter(|o| o.1 == j)
            .map(|(var, clause, positive)| l.path(PathKind::W, var, clause, positive))
            .collect()
    };

    c.run("clause_neighbourhoods", |l, out| {
        for clause in 0..p.m {
            for twin in [false, true] {
                let v = l.expect_id(Role::Clause { clause, twin });
                expect_nbrs(l, v, w_of_clause(l, clause), out);
            }
        }
    });

    c.run("junction", |l, out| {
        let all_w = (0..p.m).flat_map(|j| w_of_clause(l, j));
        expect_nbrs(l, l.junction(), all_w, out);
    });

    c.run("induced_paths", |l, out| {
        for (var, clause, positive) in occurrences(l) {
            let mut path = vec![l.expect_id(Role::Base { var, pos: clause })];
            path.extend(PathKind::ALL.map(|k| l.path(k, var, clause, positive)));
            path.push(l.expect_id(Role::Clause {
                clause,
                twin: false,
            }));
            for a in 0..path.len() {
                for b in a + 1..path.len() {
                    if l.graph().has_edge(path[a], path[b]) != (b == a + 1) {
                        out.push(format!(
                            "{} / {} adjacency breaks the induced path",
                            l.label(path[a]),
                            l.label(path[b])
                        ));
                    }
                }
            }
        }
    });

    c.run("cross_variable", |l, out| {
        for (a, b) in l.graph().edges() {
            let (ra, rb) = (l.role(a), l.role(b));
            let (Some(va), Some(vb)) = (ra.variable(), rb.variable()) else {
                continue;
            };
            if va == vb {
                continue;
            }
            let allowed = match (ra, rb) {
                (
                    Role::Path {
                        kind: PathKind::W,
                        clause: ca,
                        ..
                    },
                    Role::Path {
                        kind: PathKind::W,
                        clause: cb,
                        ..
                    },
                ) => ca != cb,
                _ => false,
            };
            if !allowed {
                out.push(format!("{} ~ {}", l.label(a), l.label(b)));
            }
        }
    });

    c.run("dead_ends", |l, out| {
        for d in l.dead_ends() {
            let Role::DeadEnd { host } = l.role(d) else {
                unreachable!()
            };
            let host_id = l.expect_id(host.role());
            let mut leaves = 0;
            let mut has_host = false;
            for &x in l.graph().neighbors(d) {
                match l.role(x) {
                    Role::Pending { host: h, .. } if h == host => leaves += 1,
                    _ if x == host_id => has_host = true,
                    _ => out.push(format!("{} ~ {}", l.label(d), l.label(x))),
                }
            }
            if !has_host {
                out.push(format!("{} misses its host", l.label(d)));
            }
            if leaves != p.pending_count {
                out.push(format!(
                    "{} has {leaves} pending intervals, expected {}",
                    l.label(d),
                    p.pending_count
                ));
            }
        }
    });

    c.run("pending_leaves", |l, out| {
        for v in 0..l.vertex_count() {
            if let Role::Pending { host, .. } = l.role(v) {
                match l.id(Role::DeadEnd { host }) {
                    Some(d) => expect_nbrs(l, v, [d], out),
                    None => out.push(format!("{} has no dead-end", l.label(v))),
                }
            }
        }
    });

    c.run("connected", |l, out| {
        let (_, k) = l.graph().components();
        if k != 1 {
            out.push(format!("{k} components"));
        }
    });

    StructureReport { checks: c.checks }
}

fn skeleton_roles(l: &ReductionLayout) -> Vec<Role> {
    let p = l.params();
    let mut roles = vec![Role::Junction];
    let mut hosts = Vec::new();
    for var in 0..p.n {
        for pos in 0..p.m {
            roles.push(Role::Base { var, pos });
        }
        for idx in 0..p.m / 2 {
            for positive in [true, false] {
                hosts.push(Host::Bridge { var, idx, positive });
            }
        }
    }
    for clause in 0..p.m {
        roles.push(Role::Clause {
            clause,
            twin: false,
        });
        roles.push(Role::Clause { clause, twin: true });
        for lit in l.formula().clause(clause) {
            let (var, positive) = (lit.var, lit.positive);
            for kind in PathKind::ALL {
                roles.push(Role::Path {
                    kind,
                    var,
                    clause,
                    positive,
                });
            }
            for kind in [PathKind::U, PathKind::W] {
                hosts.push(Host::Path {
                    kind,
                    var,
                    clause,
                    positive,
                });
            }
        }
    }
    for host in hosts {
        roles.push(host.role());
        roles.push(Role::DeadEnd { host });
    }
    roles
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::build_reduction;
    use crate::reduction::cnf::figure_formula;

    #[test]
    fn figure_layout_passes() {
        let l = build_reduction(&figure_formula(), None).unwrap();
        let report = verify_structure(&l);
        assert!(report.is_ok(), "{report}");
    }

    #[test]
    fn missing_pending_is_detected() {
        let l = build_reduction(&figure_formula(), Some(3)).unwrap();
        let v = l.lookup("pend(X_1^1)#2").unwrap();
        let report = verify_structure(&l.without_vertex(v).unwrap());
        let failed: Vec<&str> = report.failed().map(|c| c.name).collect();
        assert!(failed.contains(&"dead_ends"), "{report}");
        assert!(failed.contains(&"vertex_count"));
    }

    #[test]
    fn missing_w_is_detected() {
        let l = build_reduction(&figure_formula(), Some(1)).unwrap();
        let v = l.lookup("W_1^1").unwrap();
        let report = verify_structure(&l.without_vertex(v).unwrap());
        assert_eq!(report.failed().next().unwrap().name, "skeleton");
    }
}

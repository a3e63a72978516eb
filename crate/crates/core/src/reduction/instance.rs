//! Dominating sets encoding assignments, and the full SATR to DSR-TS compiler.

use super::cnf::{Assignment, CnfFormula};
use super::layout::{build_reduction, PathKind, ReductionLayout, Role};
use crate::error::{Error, Result};
use crate::graph::TokenConfig;

/// `D_F(A)`: the junction, every dead-end, and per variable either its
/// positive bridges or its negative bridges. Each occurrence contributes
/// its `W` interval when the literal is true under `a` and its `U` interval
/// otherwise.
pub fn df_assignment(l: &ReductionLayout, a: &Assignment) -> Result<TokenConfig> {
    let p = l.params();
    if a.len() != p.n {
        return Err(Error::InvalidInput(format!(
            "assignment has {} variables, formula has {}",
            a.len(),
            p.n
        )));
    }
    let mut tokens = vec![l.junction()];
    tokens.extend(l.dead_ends());
    for var in 0..p.n {
        for idx in 0..p.m / 2 {
            tokens.push(l.bridge(var, idx, a.get(var)));
        }
    }
    for (clause, lits) in l.formula().clauses().iter().enumerate() {
        for lit in lits {
            let kind = if lit.eval(a) {
                PathKind::W
            } else {
                PathKind::U
            };
            tokens.push(l.path(kind, lit.var, clause, lit.positive));
        }
    }
    debug_assert_eq!(tokens.len(), p.k);
    Ok(TokenConfig::new(tokens))
}

/// A compiled reduction instance.
#[derive(Debug, Clone)]
pub struct DsrInstance {
    pub layout: ReductionLayout,
    pub ds: TokenConfig,
    pub dt: TokenConfig,
}

/// Pads `f` to a multiple of 4 clauses, builds its layout and encodes both
/// endpoint assignments.
pub fn satr_to_dsr(
    f: &CnfFormula,
    a_s: &Assignment,
    a_t: &Assignment,
    pending_count: Option<usize>,
) -> Result<DsrInstance> {
    for (name, a) in [("source", a_s), ("target", a_t)] {
        if a.len() != f.num_vars() {
            return Err(Error::InvalidInstance(format!(
                "{name} assignment has {} variables, formula has {}",
                a.len(),
                f.num_vars()
            )));
        }
        if let Some(j) = f.first_falsified(a) {
            return Err(Error::InvalidInstance(format!(
                "{name} assignment falsifies clause {}",
                j + 1
            )));
        }
    }
    let layout = build_reduction(&f.pad_clauses()?, pending_count)?;
    let ds = df_assignment(&layout, a_s)?;
    let dt = df_assignment(&layout, a_t)?;
    Ok(DsrInstance { layout, ds, dt })
}

/// Whether `role` lies in `D_F(a)`; handy for spot checks.
pub fn in_df(a: &Assignment, role: Role) -> bool {
    match role {
        Role::Junction | Role::DeadEnd { .. } => true,
        Role::Bridge { var, positive, .. } => a.get(var) == positive,
        Role::Path {
            kind,
            var,
            positive,
            ..
        } => {
            let lit_true = a.get(var) == positive;
            (kind == PathKind::W && lit_true) || (kind == PathKind::U && !lit_true)
        }
        _ => false,
    }
}

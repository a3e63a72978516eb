//! Reading an assignment back from a size-`K` dominating set of `G_F`.

use super::cnf::Assignment;
use super::layout::{PathKind, ReductionLayout, Role};
use crate::error::{Error, Result};
use crate::graph::TokenConfig;

fn check_size(l: &ReductionLayout, d: &TokenConfig) -> Result<()> {
    if d.len() != l.params().k {
        return Err(Error::InvalidInput(format!(
            "configuration has {} tokens, expected K = {}",
            d.len(),
            l.params().k
        )));
    }
    if let Some(v) = d.max_vertex().filter(|&v| v >= l.vertex_count()) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            vertex_count: l.vertex_count(),
        });
    }
    Ok(())
}

/// The variable whose base, bridge and path intervals hold `l_i + m/2 + 1`
/// tokens, if any. Errors when more than one variable is over-full.
pub fn moving_variable(l: &ReductionLayout, d: &TokenConfig) -> Result<Option<usize>> {
    check_size(l, d)?;
    let p = l.params();
    let mut count = vec![0usize; p.n];
    for v in d.iter() {
        if let Some(var) = l.role(v).variable() {
            count[var] += 1;
        }
    }
    let over: Vec<usize> = (0..p.n)
        .filter(|&i| count[i] > p.ell[i] + p.m / 2)
        .collect();
    match over[..] {
        [] => Ok(None),
        [i] => Ok(Some(i)),
        _ => Err(Error::InvalidInput(format!(
            "variables {} all hold surplus tokens",
            over.iter()
                .map(|i| format!("x{}", i + 1))
                .collect::<Vec<_>>()
                .join(", ")
        ))),
    }
}

/// `A(D)`. A variable other than the moving one is 1 iff all its positive
/// bridges carry tokens. The moving variable is 1 iff some `W` interval of it
/// carries a token and every other literal of that clause is false under the
/// values already decided.
pub fn extract_assignment(l: &ReductionLayout, d: &TokenConfig) -> Result<Assignment> {
    let mv = moving_variable(l, d)?;
    let p = l.params();
    let mut bits: Vec<bool> = (0..p.n)
        .map(|var| (0..p.m / 2).all(|idx| d.contains(l.bridge(var, idx, true))))
        .collect();
    if let Some(k) = mv {
        let decided = Assignment::new(bits.clone());
        bits[k] = l.formula().clauses().iter().enumerate().any(|(j, c)| {
            let holds_w = c
                .iter()
                .any(|x| x.var == k && x.positive && d.contains(l.path(PathKind::W, k, j, true)));
            holds_w && c.iter().filter(|x| x.var != k).all(|x| !x.eval(&decided))
        });
    }
    Ok(Assignment::new(bits))
}

/// Role-level view of a configuration, for diagnostics.
pub fn describe(l: &ReductionLayout, d: &TokenConfig) -> Vec<Role> {
    d.iter().map(|v| l.role(v)).collect()
}

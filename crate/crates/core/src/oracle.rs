//! Brute-force ground truth: breadth-first search over token configurations
//! and over satisfying assignments.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{
    is_dominating, is_dominating_unchecked, Graph, ReconfSequence, SlideMove, TokenConfig,
};
use crate::reduction::cnf::{Assignment, CnfFormula};

pub const DEFAULT_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    /// Largest admissible multiset state-space bound `C(n+k-1, k)`.
    pub cap: u128,
    /// Expand each BFS layer with rayon.
    pub parallel: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            cap: DEFAULT_CAP,
            parallel: false,
        }
    }
}

/// `C(n+k-1, k)`, saturating.
pub fn multiset_bound(n: usize, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        // acc * (n + i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul(n as u128 + i) {
            Some(x) => x / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

fn check_bound(g: &Graph, k: usize, cap: u128) -> Result<()> {
    let bound = multiset_bound(g.vertex_count(), k);
    if bound > cap {
        Err(Error::ResourceLimit { bound, cap })
    } else {
        Ok(())
    }
}

/// Successors of `c`, moves in canonical order (from ascending, then to ascending).
fn successors(
    g: &Graph,
    c: &TokenConfig,
    require_domination: bool,
) -> Vec<(SlideMove, TokenConfig)> {
    let mut out = Vec::new();
    for from in c.support() {
        for &to in g.neighbors(from) {
            let next = c.replace_one(from, to).expect("from is in the support");
            if !require_domination || is_dominating_unchecked(g, next.as_slice()) {
                out.push((SlideMove::new(from, to), next));
            }
        }
    }
    out
}

fn validate_endpoints(
    g: &Graph,
    ds: &TokenConfig,
    dt: &TokenConfig,
    require_domination: bool,
) -> Result<()> {
    if ds.len() != dt.len() {
        return Err(Error::InvalidInput(format!(
            "configurations have different sizes ({} and {})",
            ds.len(),
            dt.len()
        )));
    }
    for c in [ds, dt] {
        let dominating = is_dominating(g, c)?;
        if require_domination && !dominating {
            return Err(Error::InvalidInput(format!("{c} is not dominating")));
        }
    }
    Ok(())
}

struct Search<'a> {
    g: &'a Graph,
    require_domination: bool,
    parallel: bool,
    parent: HashMap<TokenConfig, Option<(SlideMove, TokenConfig)>>,
}

impl Search<'_> {
    /// Runs BFS from `start` until `stop` holds for a discovered state (or the
    /// component is exhausted). Returns the matching state, if any.
    fn run(
        &mut self,
        start: &TokenConfig,
        stop: impl Fn(&TokenConfig) -> bool,
    ) -> Option<TokenConfig> {
        self.parent.insert(start.clone(), None);
        if stop(start) {
            return Some(start.clone());
        }
        let mut frontier = vec![start.clone()];
        while !frontier.is_empty() {
            let expanded: Vec<Vec<(SlideMove, TokenConfig)>> = if self.parallel {
                frontier
                    .par_iter()
                    .map(|c| successors(self.g, c, self.require_domination))
                    .collect()
            } else {
                frontier
                    .iter()
                    .map(|c| successors(self.g, c, self.require_domination))
                    .collect()
            };
            let mut next_frontier = Vec::new();
            for (c, succ) in frontier.iter().zip(expanded) {
                for (m, next) in succ {
                    if let Entry::Vacant(e) = self.parent.entry(next.clone()) {
                        e.insert(Some((m, c.clone())));
                        if stop(&next) {
                            return Some(next);
                        }
                        next_frontier.push(next);
                    }
                }
            }
            frontier = next_frontier;
        }
        None
    }

    fn path_to(&self, end: &TokenConfig) -> Vec<SlideMove> {
        let mut moves = Vec::new();
        let mut cur = end.clone();
        while let Some(Some((m, prev))) = self.parent.get(&cur) {
            moves.push(*m);
            cur = prev.clone();
        }
        moves.reverse();
        moves
    }
}

/// Shortest reconfiguration sequence from `ds` to `dt`, if one exists.
///
/// ```
/// use dsr_core::graph::{Graph, TokenConfig};
/// use dsr_core::oracle::{reconfig_bfs, OracleOptions};
///
/// let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
/// let found = reconfig_bfs(
///     &c6,
///     &TokenConfig::new([0, 3]),
///     &TokenConfig::new([1, 4]),
///     true,
///     OracleOptions::default(),
/// )
/// .unwrap();
/// assert!(found.is_none());
/// ```
pub fn reconfig_bfs(
    g: &Graph,
    ds: &TokenConfig,
    dt: &TokenConfig,
    require_domination: bool,
    opts: OracleOptions,
) -> Result<Option<ReconfSequence>> {
    validate_endpoints(g, ds, dt, require_domination)?;
    check_bound(g, ds.len(), opts.cap)?;
    let mut search = Search {
        g,
        require_domination,
        parallel: opts.parallel,
        parent: HashMap::new(),
    };
    Ok(search
        .run(ds, |c| c == dt)
        .map(|end| ReconfSequence::new(ds.clone(), search.path_to(&end))))
}

/// Every configuration reachable from `start`, ordered by distance and then
/// canonically.
pub fn reachable_configs(
    g: &Graph,
    start: &TokenConfig,
    require_domination: bool,
    opts: OracleOptions,
) -> Result<Vec<TokenConfig>> {
    validate_endpoints(g, start, start, require_domination)?;
    check_bound(g, start.len(), opts.cap)?;
    let mut search = Search {
        g,
        require_domination,
        parallel: opts.parallel,
        parent: HashMap::new(),
    };
    search.run(start, |_| false);
    let mut order: Vec<(usize, TokenConfig)> = Vec::new();
    // reconstruct discovery order by depth, then canonical order within a layer
    for c in search.parent.keys() {
        order.push((search.path_to(c).len(), c.clone()));
    }
    order.sort();
    Ok(order.into_iter().map(|(_, c)| c).collect())
}

/// Iterator over all dominating multisets of size `k`, in lexicographic
/// order of their sorted id lists.
pub struct DominatingSets<'a> {
    g: &'a Graph,
    current: Option<Vec<usize>>,
}

impl Iterator for DominatingSets<'_> {
    type Item = TokenConfig;

    fn next(&mut self) -> Option<TokenConfig> {
        let n = self.g.vertex_count();
        loop {
            let cur = self.current.as_mut()?;
            let out = cur.clone();
            // advance to the next nondecreasing sequence
            match cur.iter().rposition(|&x| x + 1 < n) {
                Some(i) => {
                    let v = cur[i] + 1;
                    for x in &mut cur[i..] {
                        *x = v;
                    }
                }
                None => self.current = None,
            }
            if is_dominating_unchecked(self.g, &out) {
                return Some(TokenConfig::from_sorted(out));
            }
        }
    }
}

pub fn enumerate_dominating(g: &Graph, k: usize) -> DominatingSets<'_> {
    let current = if k == 0 || g.vertex_count() == 0 {
        None
    } else {
        Some(vec![0; k])
    };
    DominatingSets { g, current }
}

/// Shortest sequence of single-variable flips from `a_s` to `a_t` through
/// satisfying assignments; variables are 0-based.
pub fn satr_bfs(f: &CnfFormula, a_s: &Assignment, a_t: &Assignment) -> Result<Option<Vec<usize>>> {
    for (name, a) in [("source", a_s), ("target", a_t)] {
        if a.len() != f.num_vars() {
            return Err(Error::InvalidInput(format!(
                "{name} assignment has {} bits, formula has {} variables",
                a.len(),
                f.num_vars()
            )));
        }
        if !f.satisfies(a) {
            return Err(Error::InvalidInstance(format!(
                "{name} assignment {a} does not satisfy the formula"
            )));
        }
    }
    if f.num_vars() > 24 {
        return Err(Error::ResourceLimit {
            bound: 1u128 << f.num_vars(),
            cap: 1 << 24,
        });
    }
    let mut parent: HashMap<Assignment, Option<(usize, Assignment)>> = HashMap::new();
    parent.insert(a_s.clone(), None);
    let mut queue = VecDeque::from([a_s.clone()]);
    while let Some(a) = queue.pop_front() {
        if &a == a_t {
            let mut flips = Vec::new();
            let mut cur = a;
            while let Some(Some((var, prev))) = parent.get(&cur) {
                flips.push(*var);
                cur = prev.clone();
            }
            flips.reverse();
            return Ok(Some(flips));
        }
        for var in 0..f.num_vars() {
            let b = a.flipped(var);
            if f.satisfies(&b) && !parent.contains_key(&b) {
                parent.insert(b.clone(), Some((var, a.clone())));
                queue.push_back(b);
            }
        }
    }
    Ok(None)
}

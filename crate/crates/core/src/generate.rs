//! Seeded random instance generators.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{Arc, CircularArcModel, Interval, IntervalModel};
use crate::reduction::cnf::{CnfFormula, Literal};

pub const MAX_ATTEMPTS: usize = 10_000;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Arcs on a circle of circumference `4n` with pairwise distinct endpoints
/// and lengths drawn uniformly from `1..=max(1, density * M)`. With
/// `density >= 1` arc 0 covers the whole circle.
pub fn random_carc_once<R: Rng>(rng: &mut R, n: usize, density: f64) -> CircularArcModel {
    let m = 4 * n.max(1) as i64;
    let max_len = ((density.min(1.0) * m as f64) as i64).clamp(1, m - 1);
    let mut used = vec![false; m as usize];
    let mut arcs = Vec::with_capacity(n);
    let full = density >= 1.0;
    for i in 0..n {
        if full && i == 0 {
            arcs.push(Arc::Full);
            continue;
        }
        loop {
            let l = rng.gen_range(0..m);
            let len = rng.gen_range(1..=max_len);
            let r = (l + len) % m;
            if !used[l as usize] && !used[r as usize] && l != r {
                used[l as usize] = true;
                used[r as usize] = true;
                arcs.push(Arc::Span { l, r });
                break;
            }
        }
    }
    CircularArcModel::new(m, arcs).expect("endpoints are distinct by construction")
}

/// Like [`random_carc_once`], retried until the intersection graph is connected.
pub fn random_connected_carc<R: Rng>(
    rng: &mut R,
    n: usize,
    density: f64,
) -> Result<CircularArcModel> {
    for _ in 0..MAX_ATTEMPTS {
        let m = random_carc_once(rng, n, density);
        if m.intersection_graph().is_connected() {
            return Ok(m);
        }
    }
    Err(Error::InvalidInput(format!(
        "no connected model with n={n}, density={density} after {MAX_ATTEMPTS} attempts"
    )))
}

/// Connected model whose arcs cover the whole circle without any full arc.
pub fn random_covering_carc<R: Rng>(
    rng: &mut R,
    n: usize,
    density: f64,
) -> Result<CircularArcModel> {
    for _ in 0..MAX_ATTEMPTS {
        let m = random_carc_once(rng, n, density.min(0.99));
        if m.uncovered_point().is_none() && m.intersection_graph().is_connected() {
            return Ok(m);
        }
    }
    Err(Error::InvalidInput(format!(
        "no covering model with n={n}, density={density} after {MAX_ATTEMPTS} attempts"
    )))
}

/// Intervals with left ends in `[0, 4n)` and lengths in `0..=density * 4n`,
/// retried until connected.
pub fn random_connected_interval<R: Rng>(
    rng: &mut R,
    n: usize,
    density: f64,
) -> Result<IntervalModel> {
    let span = 4 * n.max(1) as i64;
    let max_len = ((density * span as f64) as i64).max(1);
    for _ in 0..MAX_ATTEMPTS {
        let intervals = (0..n)
            .map(|_| {
                let l = rng.gen_range(0..span);
                Interval::bounded(l, l + rng.gen_range(0..=max_len))
            })
            .collect();
        let m = IntervalModel::new(intervals)?;
        if m.intersection_graph().is_connected() {
            return Ok(m);
        }
    }
    Err(Error::InvalidInput(format!(
        "no connected interval model with n={n} after {MAX_ATTEMPTS} attempts"
    )))
}

/// A formula over `n` variables with `m` clauses of 1 to 3 literals, in
/// which every variable occurs. Needs `1 <= n <= 3m`.
pub fn random_formula<R: Rng>(rng: &mut R, n: usize, m: usize) -> Result<CnfFormula> {
    if n == 0 || m == 0 || n > 3 * m {
        return Err(Error::InvalidInput(format!(
            "cannot place {n} variables in {m} clauses of at most 3 literals"
        )));
    }
    for _ in 0..MAX_ATTEMPTS {
        let mut clauses = Vec::with_capacity(m);
        for _ in 0..m {
            let width = rng.gen_range(1..=3.min(n));
            let mut vars: Vec<usize> = (0..n).collect();
            vars.shuffle(rng);
            let clause: Vec<Literal> = vars[..width]
                .iter()
                .map(|&var| Literal {
                    var,
                    positive: rng.gen_bool(0.5),
                })
                .collect();
            clauses.push(clause);
        }
        let f = CnfFormula::new(n, clauses).expect("clauses are well formed");
        if f.occurrences().iter().all(|o| o[0] + o[1] > 0) {
            return Ok(f);
        }
    }
    Err(Error::InvalidInput(format!(
        "no formula with n={n}, m={m} using every variable after {MAX_ATTEMPTS} attempts"
    )))
}

//! Slide sequences realizing single variable flips between `D_F(a)` sets.

use super::cnf::Assignment;
use super::instance::df_assignment;
use super::layout::{PathKind, ReductionLayout};
use crate::error::{Error, Result};
use crate::graph::{ReconfSequence, SlideMove, VertexId};

fn walk(l: &ReductionLayout, from: VertexId, to: VertexId, out: &mut Vec<SlideMove>) {
    let path = l
        .graph()
        .shortest_path(from, to)
        .expect("reduction graph is connected");
    out.extend(path.windows(2).map(|w| SlideMove::new(w[0], w[1])));
}

/// Moves turning `D_F(a)` into `D_F(a')` where `x_var` is 1 in `a` and 0 in `a'`.
fn one_to_zero(l: &ReductionLayout, var: usize) -> Vec<SlideMove> {
    let half = l.params().m / 2;
    let occ: Vec<(usize, bool)> = l
        .formula()
        .clauses()
        .iter()
        .enumerate()
        .filter_map(|(j, c)| c.iter().find(|x| x.var == var).map(|x| (j, x.positive)))
        .collect();
    let mut moves = Vec::new();
    walk(l, l.junction(), l.bridge(var, 0, false), &mut moves);
    for &(j, _) in occ.iter().filter(|o| o.1) {
        let [w, v, u] = [PathKind::W, PathKind::V, PathKind::U].map(|k| l.path(k, var, j, true));
        moves.push(SlideMove::new(w, v));
        moves.push(SlideMove::new(v, u));
    }
    for j in 0..half - 1 {
        moves.push(SlideMove::new(
            l.bridge(var, j, true),
            l.bridge(var, j + 1, false),
        ));
    }
    for &(j, _) in occ.iter().filter(|o| !o.1) {
        let [u, v, w] = [PathKind::U, PathKind::V, PathKind::W].map(|k| l.path(k, var, j, false));
        moves.push(SlideMove::new(u, v));
        moves.push(SlideMove::new(v, w));
    }
    walk(l, l.bridge(var, half - 1, true), l.junction(), &mut moves);
    moves
}

/// Slides from `D_F(a)` to `D_F(a')`, `a'` being `a` with `x_var` set to
/// `to_value`. A 1 to 0 flip walks the junction token onto the first
/// negative bridge, retracts the `W` tokens of `x_var`, shifts the positive
/// bridges onto the negative ones, advances the negative `U` tokens and walks
/// the last positive bridge token back to the junction. A 0 to 1 flip is the
/// reverse of the opposite flip.
pub fn flip_sequence(
    l: &ReductionLayout,
    a: &Assignment,
    var: usize,
    to_value: bool,
) -> Result<Vec<SlideMove>> {
    let f = l.formula();
    if a.len() != f.num_vars() || var >= f.num_vars() {
        return Err(Error::InvalidInput(format!(
            "variable x{} or assignment length {} does not match the formula",
            var + 1,
            a.len()
        )));
    }
    if a.get(var) == to_value {
        return Err(Error::InvalidInput(format!(
            "x{} already has value {}",
            var + 1,
            to_value as u8
        )));
    }
    if let Some(j) = f.first_falsified(a) {
        return Err(Error::InvalidInstance(format!(
            "assignment {a} falsifies clause {}",
            j + 1
        )));
    }
    let flipped = a.flipped(var);
    if let Some(clause) = f.first_falsified(&flipped) {
        return Err(Error::IllegalFlip {
            variable: var,
            clause,
        });
    }
    Ok(if to_value {
        one_to_zero(l, var)
            .into_iter()
            .rev()
            .map(SlideMove::reversed)
            .collect()
    } else {
        one_to_zero(l, var)
    })
}

/// Concatenates the flip sequences of `flips` (variable indices) from `D_F(a_s)`.
pub fn simulate_flips(
    l: &ReductionLayout,
    a_s: &Assignment,
    flips: &[usize],
) -> Result<ReconfSequence> {
    let mut seq = ReconfSequence::empty(df_assignment(l, a_s)?);
    let mut a = a_s.clone();
    for &var in flips {
        if var >= a.len() {
            return Err(Error::InvalidInput(format!("no variable x{}", var + 1)));
        }
        seq.extend(flip_sequence(l, &a, var, !a.get(var))?);
        a = a.flipped(var);
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_sequence;
    use crate::reduction::build_reduction;
    use crate::reduction::cnf::CnfFormula;

    #[test]
    fn flip_x2_down_and_up() {
        // (x1 | x2)(x1 | !x2)(x1 | x2)(x1 | !x2)
        let f =
            CnfFormula::from_dimacs_clauses(2, &[&[1, 2], &[1, -2], &[1, 2], &[1, -2]]).unwrap();
        let l = build_reduction(&f, None).unwrap();
        let a = Assignment::new(vec![true, true]);
        let b = Assignment::new(vec![true, false]);
        let down = flip_sequence(&l, &a, 1, false).unwrap();
        let seq = ReconfSequence::new(df_assignment(&l, &a).unwrap(), down);
        let report = validate_sequence(l.graph(), &seq, true);
        assert!(report.is_valid(), "{:?}", report.failure);
        assert_eq!(report.end, df_assignment(&l, &b).unwrap());
        assert!(seq.configs().iter().all(|c| c.len() == l.params().k));

        let up = flip_sequence(&l, &b, 1, true).unwrap();
        let seq = ReconfSequence::new(df_assignment(&l, &b).unwrap(), up);
        let report = validate_sequence(l.graph(), &seq, true);
        assert!(report.is_valid());
        assert_eq!(report.end, df_assignment(&l, &a).unwrap());
    }

    #[test]
    fn illegal_flip() {
        let f =
            CnfFormula::from_dimacs_clauses(2, &[&[1, 2], &[1, -2], &[1, 2], &[1, -2]]).unwrap();
        let l = build_reduction(&f, Some(1)).unwrap();
        let a = Assignment::new(vec![true, true]);
        assert!(matches!(
            flip_sequence(&l, &a, 0, false),
            Err(Error::IllegalFlip {
                variable: 0,
                clause: 1
            })
        ));
        assert!(flip_sequence(&l, &a, 0, true).is_err());
    }
}

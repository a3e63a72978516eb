//! CNF formulas, assignments and DIMACS text.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::io::{content_lines, parse_num};

/// A literal over a 0-based variable index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    pub fn eval(&self, a: &Assignment) -> bool {
        a.get(self.var) == self.positive
    }

    /// DIMACS form: `+(var+1)` or `-(var+1)`.
    pub fn to_dimacs(&self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    /// Repeated literals inside a clause are merged; a clause holding both
    /// polarities of a variable, or no literal at all, is rejected.
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        let mut out = Vec::with_capacity(clauses.len());
        for (j, mut clause) in clauses.into_iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::InvalidInput(format!("clause {} is empty", j + 1)));
            }
            let mut seen = Vec::new();
            clause.retain(|l| {
                let fresh = !seen.contains(l);
                seen.push(*l);
                fresh
            });
            for l in &clause {
                if l.var >= num_vars {
                    return Err(Error::InvalidInput(format!(
                        "clause {} uses variable {} but the formula has {num_vars}",
                        j + 1,
                        l.var + 1
                    )));
                }
                if clause.contains(&Literal {
                    var: l.var,
                    positive: !l.positive,
                }) {
                    return Err(Error::InvalidInput(format!(
                        "clause {} contains both polarities of x{}",
                        j + 1,
                        l.var + 1
                    )));
                }
            }
            out.push(clause);
        }
        Ok(CnfFormula {
            num_vars,
            clauses: out,
        })
    }

    /// Clauses given as DIMACS-style signed 1-based integers.
    pub fn from_dimacs_clauses(num_vars: usize, clauses: &[&[i64]]) -> Result<Self> {
        let clauses = clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&x| literal_from_dimacs(x))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        Self::new(num_vars, clauses)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn clause(&self, j: usize) -> &[Literal] {
        &self.clauses[j]
    }

    /// Index of the first clause falsified by `a`.
    pub fn first_falsified(&self, a: &Assignment) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !c.iter().any(|l| l.eval(a)))
    }

    pub fn satisfies(&self, a: &Assignment) -> bool {
        a.len() == self.num_vars && self.first_falsified(a).is_none()
    }

    /// Number of clauses containing each literal, indexed `[var][positive as usize]`.
    pub fn occurrences(&self) -> Vec<[usize; 2]> {
        let mut occ = vec![[0; 2]; self.num_vars];
        for c in &self.clauses {
            for l in c {
                occ[l.var][l.positive as usize] += 1;
            }
        }
        occ
    }

    /// Repeats the whole clause list the fewest times that makes the clause
    /// count a multiple of 4.
    pub fn pad_clauses(&self) -> Result<CnfFormula> {
        let m = self.clauses.len();
        if m == 0 {
            return Err(Error::InvalidInput("formula has no clauses".into()));
        }
        let copies = 4 / gcd(m, 4);
        Ok(CnfFormula {
            num_vars: self.num_vars,
            clauses: (0..copies)
                .flat_map(|_| self.clauses.iter().cloned())
                .collect(),
        })
    }

    /// All satisfying assignments, in increasing binary order (x1 most significant).
    pub fn satisfying_assignments(&self) -> Vec<Assignment> {
        assert!(
            self.num_vars < 24,
            "exhaustive enumeration limited to small formulas"
        );
        (0u32..(1 << self.num_vars))
            .map(|bits| Assignment::from_index(self.num_vars, bits))
            .filter(|a| self.satisfies(a))
            .collect()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn literal_from_dimacs(x: i64) -> Result<Literal> {
    if x == 0 {
        return Err(Error::InvalidInput("literal 0".into()));
    }
    Ok(Literal {
        var: (x.unsigned_abs() - 1) as usize,
        positive: x > 0,
    })
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.num_vars, self.clauses.len())?;
        for c in &self.clauses {
            for l in c {
                write!(f, "{} ", l.to_dimacs())?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

impl FromStr for CnfFormula {
    type Err = Error;

    /// DIMACS CNF: `c` comment lines, a `p cnf V C` header, clauses terminated by `0`.
    fn from_str(s: &str) -> Result<Self> {
        let mut header = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (lineno, line) in content_lines(s) {
            if line == "c" || line.starts_with("c ") || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                if header.is_some() {
                    return Err(Error::parse(lineno, "duplicate problem line"));
                }
                let mut parts = rest.split_whitespace();
                if parts.next() != Some("cnf") {
                    return Err(Error::parse(lineno, "expected `p cnf V C`"));
                }
                let v: usize = parse_num(parts.next(), lineno, "variable count")?;
                let c: usize = parse_num(parts.next(), lineno, "clause count")?;
                header = Some((v, c, lineno));
                continue;
            }
            let (nv, _, _) =
                header.ok_or_else(|| Error::parse(lineno, "clause before `p cnf` line"))?;
            for tok in line.split_whitespace() {
                let x: i64 = parse_num(Some(tok), lineno, "literal")?;
                if x == 0 {
                    if current.is_empty() {
                        return Err(Error::parse(lineno, "empty clause"));
                    }
                    clauses.push(std::mem::take(&mut current));
                } else {
                    if x.unsigned_abs() as usize > nv {
                        return Err(Error::parse(
                            lineno,
                            format!("variable {} exceeds header", x.abs()),
                        ));
                    }
                    current.push(literal_from_dimacs(x)?);
                }
            }
        }
        let (nv, nc, hline) = header.ok_or_else(|| Error::parse(1, "missing `p cnf` line"))?;
        if !current.is_empty() {
            clauses.push(current);
        }
        if clauses.len() != nc {
            return Err(Error::parse(
                hline,
                format!("header announces {nc} clauses, found {}", clauses.len()),
            ));
        }
        CnfFormula::new(nv, clauses)
    }
}

/// Truth values, indexed by 0-based variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Assignment(bits)
    }

    /// Bit `i` of the result is bit `n-1-i` of `index`.
    pub fn from_index(n: usize, index: u32) -> Self {
        Assignment((0..n).map(|i| index >> (n - 1 - i) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, var: usize) -> bool {
        self.0[var]
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn flipped(&self, var: usize) -> Assignment {
        let mut bits = self.0.clone();
        bits[var] = !bits[var];
        Assignment(bits)
    }

    /// Variables on which `self` and `other` differ.
    pub fn diff(&self, other: &Assignment) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.0[i] != other.0[i])
            .collect()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Assignment {
    type Err = Error;

    /// First non-empty line, as a bitstring such as `10`.
    fn from_str(s: &str) -> Result<Self> {
        let (lineno, line) = content_lines(s)
            .next()
            .ok_or_else(|| Error::parse(1, "missing assignment bitstring"))?;
        line.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::parse(lineno, format!("bad bit `{c}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Assignment)
    }
}

#[cfg(test)]
pub(crate) fn figure_formula() -> CnfFormula {
    CnfFormula::from_dimacs_clauses(2, &[&[1, 2], &[-1, -2], &[1], &[-2, 1]]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn padding() {
        let f = CnfFormula::from_dimacs_clauses(1, &[&[1], &[1], &[1]]).unwrap();
        assert_eq!(f.pad_clauses().unwrap().num_clauses(), 12);
        let f = CnfFormula::from_dimacs_clauses(1, &[&[1]]).unwrap();
        assert_eq!(f.pad_clauses().unwrap().num_clauses(), 4);
        let f = figure_formula();
        assert_eq!(f.pad_clauses().unwrap(), f);
        let f = CnfFormula::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap();
        assert_eq!(f.pad_clauses().unwrap().num_clauses(), 4);
        assert!(CnfFormula::new(1, vec![]).unwrap().pad_clauses().is_err());
    }

    #[test]
    fn figure_formula_has_one_model() {
        let f = figure_formula();
        let sat = f.satisfying_assignments();
        assert_eq!(sat, vec![Assignment::new(vec![true, false])]);
        assert_eq!(f.occurrences(), vec![[1, 3], [2, 1]]);
    }

    #[test]
    fn rejects_bad_clauses() {
        assert!(CnfFormula::from_dimacs_clauses(1, &[&[1, -1]]).is_err());
        assert!(CnfFormula::from_dimacs_clauses(1, &[&[]]).is_err());
        assert!(CnfFormula::from_dimacs_clauses(1, &[&[2]]).is_err());
        let f = CnfFormula::from_dimacs_clauses(1, &[&[1, 1]]).unwrap();
        assert_eq!(f.clause(0).len(), 1);
    }

    #[test]
    fn dimacs_roundtrip() {
        let text = "c example\np cnf 2 4\n1 2 0\n-1 -2 0\n1 0\n-2 1 0\n";
        let f: CnfFormula = text.parse().unwrap();
        assert_eq!(f, figure_formula());
        assert_eq!(f.to_string().parse::<CnfFormula>().unwrap(), f);
        assert!("p cnf 2 2\n1 0\n".parse::<CnfFormula>().is_err());
        assert!("1 2 0\n".parse::<CnfFormula>().is_err());
    }

    #[test]
    fn assignment_text() {
        let a: Assignment = "10\n".parse().unwrap();
        assert_eq!(a, Assignment::new(vec![true, false]));
        assert_eq!(a.to_string(), "10");
        assert!("1x".parse::<Assignment>().is_err());
        assert_eq!(
            Assignment::from_index(3, 0b100),
            Assignment::new(vec![true, false, false])
        );
    }
}

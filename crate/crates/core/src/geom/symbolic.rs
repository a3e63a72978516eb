//! An insertion-ordered line of named points. Points are placed relative to
//! existing points ("just left of p", "just right of p") and only receive
//! integer coordinates when the line is finalized.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Handle(usize);

impl Handle {
    pub fn index(self) -> usize {
        self.0
    }
}

const NIL: usize = usize::MAX;

/// Doubly linked list over handle indices.
#[derive(Debug, Clone, Default)]
pub struct SymbolicLine {
    prev: Vec<usize>,
    next: Vec<usize>,
    head: usize,
    tail: usize,
}

impl SymbolicLine {
    pub fn new() -> Self {
        SymbolicLine {
            prev: Vec::new(),
            next: Vec::new(),
            head: NIL,
            tail: NIL,
        }
    }

    pub fn len(&self) -> usize {
        self.prev.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prev.is_empty()
    }

    fn check(&self, p: Handle) -> Result<()> {
        if p.0 < self.len() {
            Ok(())
        } else {
            Err(Error::InvalidReference(p.0))
        }
    }

    fn alloc(&mut self, prev: usize, next: usize) -> Handle {
        let id = self.len();
        self.prev.push(prev);
        self.next.push(next);
        if prev == NIL {
            self.head = id;
        } else {
            self.next[prev] = id;
        }
        if next == NIL {
            self.tail = id;
        } else {
            self.prev[next] = id;
        }
        Handle(id)
    }

    /// Appends a point after every existing point.
    pub fn push_back(&mut self) -> Handle {
        let tail = self.tail;
        self.alloc(tail, NIL)
    }

    /// New point immediately before `p`.
    pub fn insert_left(&mut self, p: Handle) -> Result<Handle> {
        self.check(p)?;
        let prev = self.prev[p.0];
        Ok(self.alloc(prev, p.0))
    }

    /// New point immediately after `p`.
    pub fn insert_right(&mut self, p: Handle) -> Result<Handle> {
        self.check(p)?;
        let next = self.next[p.0];
        Ok(self.alloc(p.0, next))
    }

    /// Interval tightly enclosing `points`: a new point just left of the
    /// first of them and one just right of the last.
    pub fn frame(&mut self, points: &[Handle]) -> Result<(Handle, Handle)> {
        for &p in points {
            self.check(p)?;
        }
        let (first, last) = match points {
            [] => {
                return Err(Error::InvalidInput(
                    "cannot frame an empty point set".into(),
                ))
            }
            [p] => (*p, *p),
            _ => {
                let pos = self.positions();
                let first = *points.iter().min_by_key(|p| pos[p.0]).unwrap();
                let last = *points.iter().max_by_key(|p| pos[p.0]).unwrap();
                (first, last)
            }
        };
        let l = self.insert_left(first)?;
        let r = self.insert_right(last)?;
        Ok((l, r))
    }

    /// Rank of every handle in line order.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.len()];
        let mut cur = self.head;
        let mut rank = 0;
        while cur != NIL {
            pos[cur] = rank;
            rank += 1;
            cur = self.next[cur];
        }
        pos
    }

    /// Handles in line order.
    pub fn order(&self) -> Vec<Handle> {
        let mut out = Vec::with_capacity(self.len());
        let mut cur = self.head;
        while cur != NIL {
            out.push(Handle(cur));
            cur = self.next[cur];
        }
        out
    }

    /// Integer coordinates `0, 1, 2, ...` following line order.
    pub fn finalize(&self) -> Vec<i64> {
        self.positions().into_iter().map(|p| p as i64).collect()
    }

    pub fn is_before(&self, a: Handle, b: Handle) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        let pos = self.positions();
        Ok(pos[a.0] < pos[b.0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_left_twice() {
        let mut line = SymbolicLine::new();
        let p = line.push_back();
        let first = line.insert_left(p).unwrap();
        let second = line.insert_left(p).unwrap();
        assert_eq!(line.order(), vec![first, second, p]);
    }

    #[test]
    fn insert_right_chain() {
        let mut line = SymbolicLine::new();
        let a = line.push_back();
        let b = line.insert_right(a).unwrap();
        let c = line.insert_right(b).unwrap();
        let x = line.finalize();
        assert!(x[a.index()] < x[b.index()] && x[b.index()] < x[c.index()]);
    }

    #[test]
    fn frame_single_point() {
        let mut line = SymbolicLine::new();
        let a = line.push_back();
        let p = line.push_back();
        let b = line.push_back();
        let (l, r) = line.frame(&[p]).unwrap();
        assert_eq!(line.order(), vec![a, l, p, r, b]);
    }

    #[test]
    fn frame_span() {
        let mut line = SymbolicLine::new();
        let a = line.push_back();
        let b = line.push_back();
        let c = line.push_back();
        let (l, r) = line.frame(&[c, a]).unwrap();
        assert_eq!(line.order(), vec![l, a, b, c, r]);
    }

    #[test]
    fn unknown_handle() {
        let mut line = SymbolicLine::new();
        assert_eq!(line.insert_left(Handle(3)), Err(Error::InvalidReference(3)));
    }
}

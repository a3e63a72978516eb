//! Cutting a circular-arc model open at a maximal arc `u`.
//!
//! Line coordinate of a circle point `p` is `(l(u) - p) mod M`, so `l(u)`
//! sits at 0 and `r(u)` at `L = M - len(u)`; the part of the circle outside
//! `u` maps onto `[0, L]`.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::geom::{CircularArcModel, Interval, IntervalModel};
use crate::graph::{Graph, TokenConfig, VertexId};

/// Unfolded interval model. Vertex 0 is `u'`, vertex 1 is `u''`, then the
/// images of the surviving arcs in base-id order, then the leaves.
#[derive(Debug, Clone)]
pub struct UnfoldedGraph {
    pivot: VertexId,
    base_len: usize,
    model: IntervalModel,
    graph: Graph,
    image: Vec<Option<VertexId>>,
    base: Vec<Option<VertexId>>,
    leaves: Range<usize>,
}

pub const U_LEFT: VertexId = 0;
pub const U_RIGHT: VertexId = 1;

impl UnfoldedGraph {
    pub fn pivot(&self) -> VertexId {
        self.pivot
    }

    pub fn model(&self) -> &IntervalModel {
        &self.model
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.model.len()
    }

    /// Unfolded id of a base vertex; `None` for `u` and arcs inside `u`.
    pub fn image_of(&self, v: VertexId) -> Option<VertexId> {
        self.image[v]
    }

    /// Base vertex of an image vertex.
    pub fn base_of(&self, x: VertexId) -> Option<VertexId> {
        self.base[x]
    }

    pub fn leaves(&self) -> Range<usize> {
        self.leaves.clone()
    }

    pub fn is_leaf(&self, x: VertexId) -> bool {
        self.leaves.contains(&x)
    }

    /// Image vertices, ascending.
    pub fn images(&self) -> Range<usize> {
        2..self.leaves.start
    }

    pub fn base_len(&self) -> usize {
        self.base_len
    }
}

/// Builds the unfolded graph of `m` at the maximal arc `u`.
pub fn build_gu(m: &CircularArcModel, u: VertexId) -> Result<UnfoldedGraph> {
    if u >= m.len() {
        return Err(Error::VertexOutOfRange {
            vertex: u,
            vertex_count: m.len(),
        });
    }
    if let Some(w) = m.has_full_circle() {
        return Err(Error::Precondition(format!(
            "arc {w} covers the whole circle"
        )));
    }
    if !m.is_maximal(u) {
        return Err(Error::Precondition(format!(
            "arc {u} is not maximal by inclusion"
        )));
    }
    let n = m.len();
    let mm = m.circumference();
    let (lu, ru) = (m.left(u).unwrap(), m.right(u).unwrap());
    let big_l = m.modulo(lu - ru);

    let mut intervals = vec![Interval::left_ray(0), Interval::right_ray(big_l)];
    let mut image = vec![None; n];
    let mut base = vec![None, None];
    for v in 0..n {
        if v == u {
            continue;
        }
        let s = m.modulo(m.left(v).unwrap() - ru);
        let len = m.arc_len(v);
        // clockwise offsets from r(u) of the piece of v outside u
        let piece = if s <= big_l {
            Some((s, (s + len).min(big_l)))
        } else if s + len < mm {
            None
        } else {
            Some((0, (s + len - mm).min(big_l)))
        };
        if let Some((t_lo, t_hi)) = piece {
            image[v] = Some(intervals.len());
            base.push(Some(v));
            intervals.push(Interval::bounded(big_l - t_hi, big_l - t_lo));
        }
    }
    let leaf_start = intervals.len();
    for j in 0..(n as i64 + 2) {
        intervals.push(Interval::bounded(-2 * j - 2, -2 * j - 1));
        base.push(None);
    }
    for j in 0..(n as i64 + 2) {
        intervals.push(Interval::bounded(big_l + 2 * j + 1, big_l + 2 * j + 2));
        base.push(None);
    }
    let model = IntervalModel::new(intervals)?;
    let graph = model.intersection_graph();
    let leaves = leaf_start..model.len();
    Ok(UnfoldedGraph {
        pivot: u,
        base_len: n,
        model,
        graph,
        image,
        base,
        leaves,
    })
}

/// `D ∪ {u', u''} \ {u}` in unfolded ids. Surplus copies of `u` go to `u'`.
pub fn lift_config(g: &UnfoldedGraph, d: &TokenConfig) -> Result<TokenConfig> {
    let u = g.pivot;
    if !d.contains(u) {
        return Err(Error::Precondition(format!(
            "configuration does not contain {u}"
        )));
    }
    let mut tokens = vec![U_RIGHT];
    for v in d.iter() {
        if v == u {
            tokens.push(U_LEFT);
        } else {
            let x = g.image.get(v).copied().flatten().ok_or_else(|| {
                Error::Precondition(format!("token on {v}, which has no image (inside {u})"))
            })?;
            tokens.push(x);
        }
    }
    Ok(TokenConfig::new(tokens))
}

/// Images mapped back, plus `u` carrying `max(1, |u'| + |u''| - 1)` tokens.
pub fn project_config(g: &UnfoldedGraph, x: &TokenConfig) -> Result<TokenConfig> {
    let mut tokens = Vec::with_capacity(x.len());
    let mut ends = 0;
    for t in x.iter() {
        if t == U_LEFT || t == U_RIGHT {
            ends += 1;
        } else if let Some(v) = g.base.get(t).copied().flatten() {
            tokens.push(v);
        } else {
            return Err(Error::Precondition(format!("token on leaf {t}")));
        }
    }
    tokens.extend(std::iter::repeat_n(g.pivot, ends.max(2) - 1));
    Ok(TokenConfig::new(tokens))
}

//! Vertex orderings, weight functions and precolorings.

use std::collections::BTreeMap;

use num::Zero;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::Rational;

/// A total order on `0..n`. `u ≺ v` iff `rank(u) < rank(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexOrdering {
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl VertexOrdering {
    /// `order[i]` is the vertex at position `i` (leftmost is smallest).
    pub fn from_order(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut rank = vec![usize::MAX; n];
        for (pos, &v) in order.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidOrdering(format!(
                    "vertex {v} out of range for {n} vertices"
                )));
            }
            if rank[v] != usize::MAX {
                return Err(Error::InvalidOrdering(format!("vertex {v} listed twice")));
            }
            rank[v] = pos;
        }
        Ok(VertexOrdering { order, rank })
    }

    pub fn identity(n: usize) -> Self {
        VertexOrdering {
            order: (0..n).collect(),
            rank: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn precedes(&self, u: usize, v: usize) -> bool {
        self.rank[u] < self.rank[v]
    }

    pub(crate) fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.len() == g.n() {
            Ok(())
        } else {
            Err(Error::InvalidOrdering(format!(
                "ordering covers {} vertices, graph has {}",
                self.len(),
                g.n()
            )))
        }
    }
}

/// `N⁻(u)`: non-neighbors of `u` that precede it, in ascending id order.
pub fn lower_nonneighborhood(g: &Graph, ord: &VertexOrdering, u: usize) -> Result<Vec<usize>> {
    g.check_vertex(u)?;
    ord.check_graph(g)?;
    Ok((0..g.n())
        .filter(|&v| v != u && !g.has_edge(u, v) && ord.precedes(v, u))
        .collect())
}

/// `N⁺(u)`: non-neighbors of `u` that follow it, in ascending id order.
pub fn upper_nonneighborhood(g: &Graph, ord: &VertexOrdering, u: usize) -> Result<Vec<usize>> {
    g.check_vertex(u)?;
    ord.check_graph(g)?;
    Ok((0..g.n())
        .filter(|&v| v != u && !g.has_edge(u, v) && ord.precedes(u, v))
        .collect())
}

/// Nonnegative rational vertex weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFunction {
    weights: Vec<Rational>,
}

impl WeightFunction {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if let Some(v) = weights.iter().position(|w| *w < Rational::zero()) {
            return Err(Error::InvalidWeights(format!("weight of vertex {v} is negative")));
        }
        Ok(WeightFunction { weights })
    }

    pub fn from_integers(weights: &[i64]) -> Result<Self> {
        Self::new(weights.iter().map(|&w| crate::rational::int(w)).collect())
    }

    pub fn get(&self, v: usize) -> &Rational {
        &self.weights[v]
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().sum()
    }

    pub(crate) fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.len() == g.n() {
            Ok(())
        } else {
            Err(Error::InvalidWeights(format!(
                "{} weights for {} vertices",
                self.len(),
                g.n()
            )))
        }
    }
}

/// Non-increasing weight, ties by ascending vertex id.
pub fn ordering_by_weight(g: &Graph, w: &WeightFunction) -> Result<VertexOrdering> {
    w.check_graph(g)?;
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| w.get(b).cmp(w.get(a)).then(a.cmp(&b)));
    VertexOrdering::from_order(order)
}

/// True when weights never increase along the ordering.
pub fn is_weight_nonincreasing(ord: &VertexOrdering, w: &WeightFunction) -> bool {
    ord.order().windows(2).all(|p| w.get(p[0]) >= w.get(p[1]))
}

/// Partial color assignment; colors are positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Precoloring {
    assignment: BTreeMap<usize, u64>,
}

impl Precoloring {
    pub fn new(assignment: BTreeMap<usize, u64>) -> Result<Self> {
        if let Some((v, _)) = assignment.iter().find(|(_, &c)| c == 0) {
            return Err(Error::Precondition(format!(
                "vertex {v}: colors must be positive"
            )));
        }
        Ok(Precoloring { assignment })
    }

    pub fn from_pairs(pairs: &[(usize, u64)]) -> Result<Self> {
        Self::new(pairs.iter().copied().collect())
    }

    pub fn color(&self, v: usize) -> Option<u64> {
        self.assignment.get(&v).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn assignment(&self) -> &BTreeMap<usize, u64> {
        &self.assignment
    }

    /// Color classes `ρ_c`, keyed by color, each sorted by vertex id.
    pub fn classes(&self) -> BTreeMap<u64, Vec<usize>> {
        let mut out: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (&v, &c) in &self.assignment {
            out.entry(c).or_default().push(v);
        }
        out
    }

    /// Checks vertex ranges and that no edge joins two vertices of one color.
    pub fn check_proper(&self, g: &Graph) -> Result<()> {
        for &v in self.assignment.keys() {
            g.check_vertex(v)?;
        }
        for (u, v) in g.edges() {
            if let (Some(a), Some(b)) = (self.color(u), self.color(v)) {
                if a == b {
                    return Err(Error::ImproperPrecoloring(u, v, a));
                }
            }
        }
        Ok(())
    }
}

pub fn ordering_identity(g: &Graph) -> VertexOrdering {
    VertexOrdering::identity(g.n())
}

/// One vertex per color class first (the smallest id of each class, classes
/// by ascending representative), then the remaining precolored vertices,
/// then the uncolored ones, each block by ascending id.
pub fn ordering_consistent(g: &Graph, rho: &Precoloring) -> Result<VertexOrdering> {
    rho.check_proper(g)?;
    let mut leaders: Vec<usize> = rho.classes().values().map(|c| c[0]).collect();
    leaders.sort_unstable();
    let mut taken = vec![false; g.n()];
    for &v in &leaders {
        taken[v] = true;
    }
    let mut order = leaders;
    order.extend(
        rho.assignment
            .keys()
            .copied()
            .filter(|&v| !taken[v]),
    );
    order.extend((0..g.n()).filter(|&v| rho.color(v).is_none()));
    VertexOrdering::from_order(order)
}

/// Every nonempty color class has a member preceding each uncolored vertex.
pub fn is_consistent(ord: &VertexOrdering, rho: &Precoloring) -> bool {
    consistency_violation(ord, rho).is_none()
}

/// First `(uncolored vertex, color)` pair breaking consistency, if any.
pub fn consistency_violation(ord: &VertexOrdering, rho: &Precoloring) -> Option<(usize, u64)> {
    let firsts: Vec<(u64, usize)> = rho
        .classes()
        .into_iter()
        .map(|(c, members)| {
            let min_rank = members.iter().map(|&v| ord.rank(v)).min().expect("nonempty");
            (c, min_rank)
        })
        .collect();
    (0..ord.len())
        .filter(|&w| rho.color(w).is_none())
        .find_map(|w| {
            firsts
                .iter()
                .find(|&&(_, r)| r > ord.rank(w))
                .map(|&(c, _)| (w, c))
        })
}

/// `rep(v)`: the ≺-minimum of the color class of `v`.
pub fn rep_of(v: usize, rho: &Precoloring, ord: &VertexOrdering) -> Result<usize> {
    let c = rho.color(v).ok_or(Error::NotPrecolored(v))?;
    Ok(rho
        .assignment
        .iter()
        .filter(|(_, &cc)| cc == c)
        .map(|(&u, _)| u)
        .min_by_key(|&u| ord.rank(u))
        .expect("class contains v"))
}

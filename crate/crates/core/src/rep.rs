//! The auxiliary graph on oriented non-edges, line graphs and the
//! structural recognizers used on them.
//!
//! For a graph `G` and an ordering `≺`, every non-edge `uv` with `u ≺ v`
//! becomes an arc `(u, v)`: the variable stating that `u` represents the
//! color class of `v`. Two arcs are adjacent in the auxiliary graph when
//! they appear together in some compact constraint
//!
//! ```text
//!     sum_{w in N⁻(x)} x_wx + sum_{k in K} x_xk <= 1,   K ⊆ N⁺(x) a clique.
//! ```
//!
//! Writing `a = (u, v)` and `b = (u', v')`, this happens exactly when
//!
//! 1. `v = v'`: both sit in the lower sum of the constraints of `v`;
//! 2. `v = u'` or `v' = u`: one is in the lower sum and the other in the
//!    clique sum of the shared vertex (every upper non-neighbor lies in some
//!    maximal clique of `N⁺`);
//! 3. `u = u'` and `vv'` is an edge of `G`: both heads fit in one clique of
//!    `N⁺(u)`.
//!
//! A vertex with empty `N⁺` still carries the constraint with `K = ∅`, so its
//! in-arcs are pairwise adjacent through rule 1 alone.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;

use crate::caps::Caps;
use crate::error::Result;
use crate::formulation::Var;
use crate::graph::Graph;
use crate::ordering::VertexOrdering;
use crate::structure::cojoin_decompose;

/// An oriented non-edge `(tail, head)` with `tail ≺ head`.
pub type Arc = Var;

/// Auxiliary graph whose vertices are the arcs of the complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepGraph {
    arcs: Vec<Arc>,
    index: HashMap<Arc, usize>,
    graph: Graph,
}

impl RepGraph {
    /// Arcs sorted by `(tail, head)` vertex ids.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Adjacency on arc positions.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn index_of(&self, arc: &Arc) -> Option<usize> {
        self.index.get(arc).copied()
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    /// Adjacent arc pairs as position pairs `(i, j)`, `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.graph.edges().collect()
    }

    /// Same arcs with extra adjacencies; used to probe the recognizers.
    pub fn with_extra_edges(&self, extra: &[(usize, usize)]) -> Result<RepGraph> {
        let graph = Graph::from_edges(
            self.arcs.len(),
            self.graph.edges().chain(extra.iter().copied()),
        )?;
        Ok(RepGraph {
            arcs: self.arcs.clone(),
            index: self.index.clone(),
            graph,
        })
    }
}

/// Arcs of the complement of `g` oriented by `ord`, sorted by vertex ids.
pub fn arcs_of(g: &Graph, ord: &VertexOrdering) -> Vec<Arc> {
    g.non_edges()
        .into_iter()
        .map(|(a, b)| {
            if ord.precedes(a, b) {
                Var::new(a, b)
            } else {
                Var::new(b, a)
            }
        })
        .sorted()
        .collect()
}

pub fn build_rep(g: &Graph, ord: &VertexOrdering) -> Result<RepGraph> {
    ord.check_graph(g)?;
    let arcs = arcs_of(g, ord);
    let index: HashMap<Arc, usize> = arcs.iter().enumerate().map(|(i, a)| (*a, i)).collect();
    let mut edges = Vec::new();
    for (i, a) in arcs.iter().enumerate() {
        for (j, b) in arcs.iter().enumerate().skip(i + 1) {
            let same_head = a.head == b.head;
            let chained = a.head == b.tail || b.head == a.tail;
            let same_tail_adjacent_heads = a.tail == b.tail && g.has_edge(a.head, b.head);
            if same_head || chained || same_tail_adjacent_heads {
                edges.push((i, j));
            }
        }
    }
    let graph = Graph::from_edges(arcs.len(), edges)?;
    Ok(RepGraph { arcs, index, graph })
}

/// Line graph of `h`; vertex `i` of the result is the edge `labels[i]`
/// (edges in lexicographic order).
pub fn line_graph(h: &Graph) -> (Graph, Vec<(usize, usize)>) {
    let labels: Vec<(usize, usize)> = h.edges().collect();
    let mut edges = Vec::new();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            let (a, b) = labels[i];
            let (c, d) = labels[j];
            if a == c || a == d || b == c || b == d {
                edges.push((i, j));
            }
        }
    }
    let g = Graph::from_edges(labels.len(), edges).expect("valid line graph");
    (g, labels)
}

fn unordered(a: &Arc) -> (usize, usize) {
    (a.tail.min(a.head), a.tail.max(a.head))
}

/// Compares `rep` with the line graph of the complement of `g` under the
/// arc ↔ edge identification. Returns `(same vertex set, edge inclusion,
/// edge equality)`.
fn compare_with_linegraph(rep: &RepGraph, g: &Graph) -> (bool, bool, bool) {
    let (lg, labels) = line_graph(&g.complement());
    let rep_labels: Vec<(usize, usize)> = rep.arcs.iter().map(unordered).collect();
    let pos: HashMap<(usize, usize), usize> =
        labels.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let same_vertices = rep_labels.len() == labels.len()
        && rep_labels.iter().all(|e| pos.contains_key(e));
    if !same_vertices {
        return (false, false, false);
    }
    let subset = rep
        .graph
        .edges()
        .all(|(i, j)| lg.has_edge(pos[&rep_labels[i]], pos[&rep_labels[j]]));
    let equal = subset && rep.graph.num_edges() == lg.num_edges();
    (true, subset, equal)
}

/// `V(R) = V(L(Ḡ))` and `E(R) ⊆ E(L(Ḡ))` under the natural identification.
pub fn is_spanning_subgraph_of_linegraph(rep: &RepGraph, g: &Graph) -> bool {
    let (same, subset, _) = compare_with_linegraph(rep, g);
    same && subset
}

/// Whether the auxiliary graph equals `L(Ḡ)` for this ordering.
pub fn rep_equals_linegraph(rep: &RepGraph, g: &Graph) -> bool {
    compare_with_linegraph(rep, g).2
}

/// Calls `f` on every ordering of `0..n` in lexicographic order until it
/// returns `false`. Returns whether all calls returned `true`.
pub fn for_all_orderings<F>(n: usize, cap: usize, mut f: F) -> Result<bool>
where
    F: FnMut(&VertexOrdering) -> Result<bool>,
{
    Caps::check("ordering enumeration", n, cap)?;
    for perm in (0..n).permutations(n) {
        let ord = VertexOrdering::from_order(perm)?;
        if !f(&ord)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn rep_equals_linegraph_all_orderings(g: &Graph) -> Result<bool> {
    rep_equals_linegraph_all_orderings_with_cap(g, Caps::default().orderings)
}

pub fn rep_equals_linegraph_all_orderings_with_cap(g: &Graph, cap: usize) -> Result<bool> {
    for_all_orderings(g.n(), cap, |ord| {
        Ok(rep_equals_linegraph(&build_rep(g, ord)?, g))
    })
}

/// No induced `K_{1,3}`.
pub fn is_claw_free(h: &Graph) -> bool {
    (0..h.n()).all(|v| {
        let ns = h.neighbors(v);
        !ns.iter().tuple_combinations().any(|(&a, &b, &c)| {
            !h.has_edge(a, b) && !h.has_edge(a, c) && !h.has_edge(b, c)
        })
    })
}

/// Every neighborhood is covered by two cliques, i.e. the complement of
/// each neighborhood is bipartite.
pub fn is_quasi_line(h: &Graph) -> bool {
    (0..h.n()).all(|v| {
        let co = h.induced(h.neighbors(v)).complement();
        is_bipartite(&co)
    })
}

pub fn is_bipartite(g: &Graph) -> bool {
    let n = g.n();
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    stack.push(w);
                } else if side[w] == side[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Result of a sweep over all orderings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderingStatus {
    Always,
    FailsOn(VertexOrdering),
}

impl OrderingStatus {
    pub fn is_always(&self) -> bool {
        matches!(self, OrderingStatus::Always)
    }
}

fn status_all_orderings(
    g: &Graph,
    cap: usize,
    test: impl Fn(&Graph) -> bool,
) -> Result<OrderingStatus> {
    let mut witness = None;
    for_all_orderings(g.n(), cap, |ord| {
        let ok = test(build_rep(g, ord)?.graph());
        if !ok {
            witness = Some(ord.clone());
        }
        Ok(ok)
    })?;
    Ok(witness.map_or(OrderingStatus::Always, OrderingStatus::FailsOn))
}

pub fn quasiline_status_all_orderings(g: &Graph) -> Result<OrderingStatus> {
    quasiline_status_all_orderings_with_cap(g, Caps::default().orderings)
}

pub fn quasiline_status_all_orderings_with_cap(g: &Graph, cap: usize) -> Result<OrderingStatus> {
    status_all_orderings(g, cap, is_quasi_line)
}

pub fn clawfree_status_all_orderings_with_cap(g: &Graph, cap: usize) -> Result<OrderingStatus> {
    status_all_orderings(g, cap, is_claw_free)
}

/// The path gadget graph `H` whose line graph is the auxiliary graph of a
/// graph with paw-free complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathGadgetGraph {
    /// `n + 2k` vertices: the original ids plus two fresh path ends per
    /// triple, `n + 2i` and `n + 2i + 1`.
    pub graph: Graph,
    /// Arc represented by each edge `(a, b)`, `a < b`, of `graph`.
    pub edge_to_arc: BTreeMap<(usize, usize), Arc>,
}

/// Disjoint union of `complement(G[G'])` and, for each stable triple
/// `u ≺ v ≺ w`, the path `u' - v - w - u''` with fresh ends.
///
/// Edge `u'v` stands for the arc `(u, v)`, `vw` for `(v, w)`, `wu''` for
/// `(u, w)`, and an edge of the complement of `G'` for its oriented arc.
/// Triples may interleave with other vertices in the ordering: arcs never
/// cross join components, so the construction only looks at the order inside
/// each triple.
pub fn build_h_g(g: &Graph, ord: &VertexOrdering) -> Result<Option<PathGadgetGraph>> {
    ord.check_graph(g)?;
    let Some(dec) = cojoin_decompose(g) else {
        return Ok(None);
    };
    let n = g.n();
    let mut edge_to_arc = BTreeMap::new();
    for (a, b) in g.induced(&dec.rest).complement().edges() {
        let (a, b) = (dec.rest[a], dec.rest[b]);
        let arc = if ord.precedes(a, b) {
            Var::new(a, b)
        } else {
            Var::new(b, a)
        };
        edge_to_arc.insert((a, b), arc);
    }
    for (i, t) in dec.triples.iter().enumerate() {
        let mut t = *t;
        t.sort_by_key(|&v| ord.rank(v));
        let [u, v, w] = t;
        let (u1, u2) = (n + 2 * i, n + 2 * i + 1);
        edge_to_arc.insert((v.min(u1), v.max(u1)), Var::new(u, v));
        edge_to_arc.insert((v.min(w), v.max(w)), Var::new(v, w));
        edge_to_arc.insert((w.min(u2), w.max(u2)), Var::new(u, w));
    }
    let graph = Graph::from_edges(n + 2 * dec.triples.len(), edge_to_arc.keys().copied())?;
    Ok(Some(PathGadgetGraph { graph, edge_to_arc }))
}

/// Checks that the natural edge ↔ arc map is an isomorphism from
/// `L(H)` onto the auxiliary graph.
pub fn linegraph_matches_rep(h: &PathGadgetGraph, rep: &RepGraph) -> bool {
    let (lg, labels) = line_graph(&h.graph);
    if labels.len() != rep.num_arcs() {
        return false;
    }
    let mut map = Vec::with_capacity(labels.len());
    for e in &labels {
        match h.edge_to_arc.get(e).and_then(|a| rep.index_of(a)) {
            Some(i) => map.push(i),
            None => return false,
        }
    }
    if map.iter().copied().sorted().dedup().count() != map.len() {
        return false;
    }
    lg.num_edges() == rep.graph.num_edges()
        && lg.edges().all(|(i, j)| rep.graph.has_edge(map[i], map[j]))
}

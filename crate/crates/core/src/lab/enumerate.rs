//! Exact enumeration of coloring vectors, stable sets of the auxiliary graph
//! and matchings of the complement, as bitmasks over the sorted arc list.

use std::collections::{BTreeSet, HashMap};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::formulation::{indicator_point, PointVector, Var};
use crate::graph::Graph;
use crate::ordering::{Precoloring, VertexOrdering};
use crate::rep::{arcs_of, RepGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Colorings,
    StableSets,
    Matchings,
    SystemVertices,
}

/// Distinct 0/1 vectors over `arcs`; bit `i` of a mask is arc `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSetEnumeration {
    pub arcs: Vec<Var>,
    /// Sorted ascending, no duplicates.
    pub masks: Vec<u64>,
    pub source: Source,
}

impl VertexSetEnumeration {
    fn new(arcs: Vec<Var>, mut masks: Vec<u64>, source: Source) -> Self {
        masks.sort_unstable();
        masks.dedup();
        VertexSetEnumeration { arcs, masks, source }
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn contains(&self, mask: u64) -> bool {
        self.masks.binary_search(&mask).is_ok()
    }

    pub fn point(&self, mask: u64) -> PointVector {
        mask_point(&self.arcs, mask)
    }

    pub fn points(&self) -> Vec<PointVector> {
        self.masks.iter().map(|&m| self.point(m)).collect()
    }

    /// Same vectors as sets, ignoring the source tag.
    pub fn same_vectors(&self, other: &VertexSetEnumeration) -> bool {
        self.arcs == other.arcs && self.masks == other.masks
    }
}

pub fn mask_point(arcs: &[Var], mask: u64) -> PointVector {
    let ones: BTreeSet<Var> = (0..arcs.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| arcs[i])
        .collect();
    indicator_point(arcs, &ones)
}

/// Enumeration is allowed for at most [`Caps::enum_arcs`] arcs or at most
/// [`Caps::enum_vertices`] vertices, and never beyond 64 arcs.
pub fn check_enumeration_caps(g: &Graph, arcs: usize, caps: &Caps) -> Result<()> {
    if arcs > 64 || (arcs > caps.enum_arcs && g.n() > caps.enum_vertices) {
        return Err(Error::CapExceeded {
            what: "enumeration arcs",
            actual: arcs,
            cap: caps.enum_arcs,
        });
    }
    Ok(())
}

fn arc_table(arcs: &[Var]) -> HashMap<(usize, usize), usize> {
    arcs.iter()
        .enumerate()
        .map(|(i, a)| ((a.tail, a.head), i))
        .collect()
}

/// One vector per partition of `V` into stable sets, each class encoded by
/// its ≺-minimum: `x_uv = 1` iff `u ≠ v` and `u` is the ≺-minimum of the
/// class of `v`. With `rho`, only partitions keeping each precolor class in
/// one part and distinct precolor classes in distinct parts.
pub fn enumerate_colorings(
    g: &Graph,
    ord: &VertexOrdering,
    rho: Option<&Precoloring>,
    caps: &Caps,
) -> Result<VertexSetEnumeration> {
    ord.check_graph(g)?;
    if let Some(rho) = rho {
        rho.check_proper(g)?;
    }
    let arcs = arcs_of(g, ord);
    check_enumeration_caps(g, arcs.len(), caps)?;
    let table = arc_table(&arcs);

    struct Part {
        rep: usize,
        members: Vec<usize>,
        color: Option<u64>,
    }

    struct Ctx<'a> {
        g: &'a Graph,
        order: &'a [usize],
        rho: Option<&'a Precoloring>,
        table: &'a HashMap<(usize, usize), usize>,
        out: Vec<u64>,
    }

    fn go(ctx: &mut Ctx<'_>, depth: usize, parts: &mut Vec<Part>, mask: u64) {
        if depth == ctx.order.len() {
            ctx.out.push(mask);
            return;
        }
        let v = ctx.order[depth];
        let color = ctx.rho.and_then(|r| r.color(v));
        let home = color.and_then(|c| parts.iter().position(|p| p.color == Some(c)));
        for i in 0..parts.len() {
            if home.is_some_and(|h| h != i) {
                continue;
            }
            if color.is_some() && home.is_none() && parts[i].color.is_some() {
                continue;
            }
            if parts[i].members.iter().any(|&u| ctx.g.has_edge(u, v)) {
                continue;
            }
            let bit = 1u64 << ctx.table[&(parts[i].rep, v)];
            parts[i].members.push(v);
            let old = parts[i].color;
            if color.is_some() {
                parts[i].color = color;
            }
            go(ctx, depth + 1, parts, mask | bit);
            parts[i].color = old;
            parts[i].members.pop();
        }
        if home.is_none() {
            parts.push(Part {
                rep: v,
                members: vec![v],
                color,
            });
            go(ctx, depth + 1, parts, mask);
            parts.pop();
        }
    }

    let mut ctx = Ctx {
        g,
        order: ord.order(),
        rho,
        table: &table,
        out: Vec::new(),
    };
    go(&mut ctx, 0, &mut Vec::new(), 0);
    Ok(VertexSetEnumeration::new(arcs, ctx.out, Source::Colorings))
}

fn rep_caps(arcs: usize, caps: &Caps) -> Result<()> {
    let limit = caps
        .enum_arcs
        .max(caps.enum_vertices * caps.enum_vertices.saturating_sub(1) / 2)
        .min(64);
    if arcs > limit {
        return Err(Error::CapExceeded {
            what: "stable set enumeration arcs",
            actual: arcs,
            cap: limit,
        });
    }
    Ok(())
}

/// All stable sets of `adj` (bitmask adjacency on at most 64 vertices).
pub(crate) fn stable_set_masks(adj: &[u64]) -> Vec<u64> {
    fn go(adj: &[u64], i: usize, blocked: u64, mask: u64, out: &mut Vec<u64>) {
        if i == adj.len() {
            out.push(mask);
            return;
        }
        go(adj, i + 1, blocked, mask, out);
        if blocked >> i & 1 == 0 {
            go(adj, i + 1, blocked | adj[i], mask | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    go(adj, 0, 0, 0, &mut out);
    out
}

/// All 0/1 vectors whose support is a stable set of the auxiliary graph.
pub fn enumerate_stable_sets(rep: &RepGraph, caps: &Caps) -> Result<VertexSetEnumeration> {
    rep_caps(rep.num_arcs(), caps)?;
    let adj = rep.graph().masks()?;
    Ok(VertexSetEnumeration::new(
        rep.arcs().to_vec(),
        stable_set_masks(&adj),
        Source::StableSets,
    ))
}

/// All matchings of the complement of `g`, as arc vectors.
pub fn enumerate_complement_matchings(
    g: &Graph,
    ord: &VertexOrdering,
    caps: &Caps,
) -> Result<VertexSetEnumeration> {
    ord.check_graph(g)?;
    let arcs = arcs_of(g, ord);
    check_enumeration_caps(g, arcs.len(), caps)?;
    let adj: Vec<u64> = arcs
        .iter()
        .map(|a| {
            arcs.iter().enumerate().fold(0u64, |m, (j, b)| {
                let share = a != b
                    && (a.tail == b.tail || a.tail == b.head || a.head == b.tail || a.head == b.head);
                if share {
                    m | 1 << j
                } else {
                    m
                }
            })
        })
        .collect();
    Ok(VertexSetEnumeration::new(
        arcs,
        stable_set_masks(&adj),
        Source::Matchings,
    ))
}

//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library routines whose output it is compared against.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use repcolor::{Graph, Var, VertexOrdering};

/// Every partition of the vertices into stable sets, classes sorted.
pub fn stable_partitions(g: &Graph) -> Vec<Vec<Vec<usize>>> {
    fn go(g: &Graph, v: usize, classes: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if v == g.n() {
            out.push(classes.clone());
            return;
        }
        for i in 0..classes.len() {
            if classes[i].iter().all(|&u| !g.has_edge(u, v)) {
                classes[i].push(v);
                go(g, v + 1, classes, out);
                classes[i].pop();
            }
        }
        classes.push(vec![v]);
        go(g, v + 1, classes, out);
        classes.pop();
    }
    let mut out = Vec::new();
    go(g, 0, &mut Vec::new(), &mut out);
    out
}

pub fn chromatic(g: &Graph) -> usize {
    stable_partitions(g).iter().map(Vec::len).min().unwrap_or(0)
}

pub fn alpha(g: &Graph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|s| {
            (0..n)
                .tuple_combinations()
                .all(|(a, b)| s >> a & 1 == 0 || s >> b & 1 == 0 || !g.has_edge(a, b))
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Non-edges oriented by the ordering, sorted by `(tail, head)`.
pub fn oriented_non_edges(g: &Graph, ord: &VertexOrdering) -> Vec<Var> {
    let mut arcs = Vec::new();
    for (a, b) in (0..g.n()).tuple_combinations() {
        if !g.has_edge(a, b) {
            arcs.push(if ord.rank(a) < ord.rank(b) {
                Var::new(a, b)
            } else {
                Var::new(b, a)
            });
        }
    }
    arcs.sort();
    arcs
}

/// Vector of a partition: the earliest member of each class represents the
/// others.
pub fn partition_mask(classes: &[Vec<usize>], ord: &VertexOrdering, arcs: &[Var]) -> u64 {
    let mut mask = 0u64;
    for c in classes {
        let r = *c.iter().min_by_key(|&&v| ord.rank(v)).unwrap();
        for &v in c.iter().filter(|&&v| v != r) {
            let i = arcs.iter().position(|a| *a == Var::new(r, v)).unwrap();
            mask |= 1 << i;
        }
    }
    mask
}

pub fn coloring_masks(g: &Graph, ord: &VertexOrdering, arcs: &[Var]) -> BTreeSet<u64> {
    stable_partitions(g)
        .iter()
        .map(|p| partition_mask(p, ord, arcs))
        .collect()
}

/// Stable sets of a graph on `k <= 20` vertices by subset enumeration.
pub fn stable_masks(h: &Graph) -> BTreeSet<u64> {
    let k = h.n();
    assert!(k <= 22);
    let edges: Vec<(usize, usize)> = h.edges().collect();
    (0u64..1 << k)
        .filter(|s| edges.iter().all(|&(a, b)| s >> a & 1 == 0 || s >> b & 1 == 0))
        .collect()
}

pub fn all_orderings(n: usize) -> Vec<VertexOrdering> {
    (0..n)
        .permutations(n)
        .map(|p| VertexOrdering::from_order(p).unwrap())
        .collect()
}

/// `pattern` occurs as a (not necessarily induced) subgraph of `g`, by trying
/// every injective placement.
pub fn has_subgraph(g: &Graph, pattern: &[(usize, usize)], k: usize) -> bool {
    (0..g.n())
        .permutations(k)
        .any(|m| pattern.iter().all(|&(a, b)| g.has_edge(m[a], m[b])))
}

pub const KITE: [(usize, usize); 5] = [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)];

/// No vertex with three pairwise non-adjacent neighbors.
pub fn claw_free(h: &Graph) -> bool {
    (0..h.n()).all(|v| {
        h.neighbors(v)
            .iter()
            .tuple_combinations()
            .all(|(&a, &b, &c)| h.has_edge(a, b) || h.has_edge(a, c) || h.has_edge(b, c))
    })
}

/// Every neighborhood splits into two cliques: the non-adjacency graph on
/// it is 2-colorable.
pub fn quasi_line(h: &Graph) -> bool {
    (0..h.n()).all(|v| {
        let nb = h.neighbors(v);
        let mut side = vec![None; nb.len()];
        for s in 0..nb.len() {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(i) = stack.pop() {
                for j in 0..nb.len() {
                    if j == i || h.has_edge(nb[i], nb[j]) {
                        continue;
                    }
                    let want = !side[i].unwrap();
                    match side[j] {
                        None => {
                            side[j] = Some(want);
                            stack.push(j);
                        }
                        Some(x) if x != want => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    })
}

/// Proper precolorings with at most `max_classes` colors, colors numbered
/// by first appearance.
pub fn precolorings(g: &Graph, max_classes: u64) -> Vec<Vec<(usize, u64)>> {
    fn go(
        g: &Graph,
        v: usize,
        used: u64,
        max: u64,
        cur: &mut Vec<(usize, u64)>,
        out: &mut Vec<Vec<(usize, u64)>>,
    ) {
        if v == g.n() {
            out.push(cur.clone());
            return;
        }
        go(g, v + 1, used, max, cur, out);
        for c in 1..=(used + 1).min(max) {
            if cur.iter().any(|&(u, cu)| cu == c && g.has_edge(u, v)) {
                continue;
            }
            cur.push((v, c));
            go(g, v + 1, used.max(c), max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(g, 0, 0, max_classes, &mut Vec::new(), &mut out);
    out
}

/// Fewest colors of a coloring agreeing with the precoloring up to renaming
/// of the new colors.
pub fn extension_optimum(g: &Graph, pre: &[(usize, u64)]) -> Option<usize> {
    let color = |v: usize| pre.iter().find(|&&(u, _)| u == v).map(|&(_, c)| c);
    stable_partitions(g)
        .into_iter()
        .filter(|p| {
            p.iter().all(|class| {
                let colors: BTreeSet<u64> = class.iter().filter_map(|&v| color(v)).collect();
                colors.len() <= 1
            }) && {
                // a color never splits over two classes
                let mut owner = std::collections::BTreeMap::new();
                p.iter().enumerate().all(|(i, class)| {
                    class
                        .iter()
                        .filter_map(|&v| color(v))
                        .all(|c| *owner.entry(c).or_insert(i) == i)
                })
            }
        })
        .map(|p| p.len())
        .min()
}

/// Smallest sum over classes of the heaviest member.
pub fn max_coloring_optimum(g: &Graph, w: &[i64]) -> i64 {
    stable_partitions(g)
        .iter()
        .map(|p| p.iter().map(|c| c.iter().map(|&v| w[v]).max().unwrap()).sum())
        .min()
        .unwrap_or(0)
}

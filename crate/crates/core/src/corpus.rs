//! Small graphs up to isomorphism, named instances and seeded ordering
//! samples.
//!
//! Graphs on `n` vertices come from those on `n - 1` by adding a vertex
//! with every possible neighborhood, deduplicated by a canonical code: the
//! largest adjacency bit string over the relabelings that respect a degree
//! refinement of the vertices. Connected graphs only need extensions of
//! connected graphs, since every connected graph has a vertex whose removal
//! keeps it connected.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graph::Graph;
use crate::ordering::VertexOrdering;

/// Largest vertex count accepted by the generators.
pub const MAX_CORPUS_N: usize = 8;

fn invariant(g: &Graph, v: usize) -> (usize, Vec<usize>) {
    let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&u| g.degree(u)).collect();
    nd.sort_unstable();
    (g.degree(v), nd)
}

/// Canonical code of `g` (at most 11 vertices).
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 11, "canonical codes fit 11 vertices");
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let grouped = (0..n)
        .map(|v| (invariant(g, v), v))
        .sorted()
        .chunk_by(|(inv, _)| inv.clone());
    for (_, group) in &grouped {
        cells.push(group.map(|(_, v)| v).collect());
    }
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let mut best = 0u64;
    let mut labels = vec![0usize; n];
    fn walk(
        g: &Graph,
        cells: &[Vec<usize>],
        cell: usize,
        offset: usize,
        labels: &mut Vec<usize>,
        pairs: &[(usize, usize)],
        best: &mut u64,
    ) {
        if cell == cells.len() {
            // position p in the relabeled graph holds original vertex labels[p]
            let code = pairs.iter().fold(0u64, |c, &(a, b)| {
                (c << 1) | u64::from(g.has_edge(labels[a], labels[b]))
            });
            *best = (*best).max(code);
            return;
        }
        for perm in cells[cell].iter().copied().permutations(cells[cell].len()) {
            labels[offset..offset + perm.len()].copy_from_slice(&perm);
            walk(g, cells, cell + 1, offset + perm.len(), labels, pairs, best);
        }
    }
    walk(g, &cells, 0, 0, &mut labels, &pairs, &mut best);
    best
}

fn extend(base: &[Graph], connected: bool) -> Vec<Graph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for g in base {
        let n = g.n();
        let start = u64::from(connected);
        for mask in start..(1u64 << n) {
            let edges = g
                .edges()
                .chain((0..n).filter(|i| mask >> i & 1 == 1).map(|i| (i, n)));
            let h = Graph::from_edges(n + 1, edges).expect("valid extension");
            if seen.insert(canonical_code(&h)) {
                out.push(h);
            }
        }
    }
    out
}

fn generate(n: usize, connected: bool) -> Vec<Graph> {
    assert!(n <= MAX_CORPUS_N, "corpus generation is limited to {MAX_CORPUS_N} vertices");
    if n == 0 {
        return if connected { vec![] } else { vec![Graph::empty(0)] };
    }
    let mut level = vec![Graph::empty(1)];
    for _ in 1..n {
        level = extend(&level, connected);
    }
    level.sort_by_key(|g| (g.num_edges(), std::cmp::Reverse(canonical_code(g))));
    level
}

/// Every graph on exactly `n` vertices, one per isomorphism class.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    generate(n, false)
}

/// Every connected graph on exactly `n` vertices, one per isomorphism
/// class.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    generate(n, true)
}

/// Connected graphs with `1 <= n <= max_n`, by increasing `n`.
pub fn connected_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).expect("valid")
}

/// Named instances with their file stems.
pub fn named_instances() -> Vec<(&'static str, Graph)> {
    use crate::structure::Pattern;
    let base = [
        ("c5", Graph::cycle(5)),
        ("c7", Graph::cycle(7)),
        ("petersen", petersen()),
        ("paw", Pattern::Paw.graph()),
        ("kite", Pattern::Kite.graph()),
        ("claw", Pattern::Claw.graph()),
        ("stable3", Graph::empty(3)),
        ("k3_join_s3", Graph::complete(3).join(&Graph::empty(3))),
    ];
    let mut out = Vec::new();
    for (name, g) in base {
        out.push((name, g.clone()));
    }
    let complements = [
        ("c7_complement", Graph::cycle(7).complement()),
        ("petersen_complement", petersen().complement()),
        ("paw_complement", Pattern::Paw.graph().complement()),
        ("kite_complement", Pattern::Kite.graph().complement()),
        ("claw_complement", Pattern::Claw.graph().complement()),
    ];
    out.extend(complements);
    out
}

/// `count` orderings of `0..n` drawn by seeded shuffles; deterministic for a
/// given seed.
pub fn sample_orderings(n: usize, count: usize, seed: u64) -> Vec<VertexOrdering> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            VertexOrdering::from_order(order).expect("permutation")
        })
        .collect()
}

/// All orderings when `n <= exhaustive_up_to`, otherwise `fallback` seeded
/// samples.
pub fn orderings_for(
    n: usize,
    exhaustive_up_to: usize,
    fallback: usize,
    seed: u64,
) -> Result<Vec<VertexOrdering>> {
    if n <= exhaustive_up_to {
        (0..n)
            .permutations(n)
            .map(VertexOrdering::from_order)
            .collect()
    } else {
        Ok(sample_orderings(n, fallback, seed))
    }
}

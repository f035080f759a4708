//! Fixed-pattern subgraph detection and the complete-join decomposition of
//! graphs whose complement has no paw.

use crate::graph::Graph;

/// Small patterns searched as (not necessarily induced) subgraphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    Triangle,
    K4,
    K5,
    /// Triangle plus a pendant vertex.
    Paw,
    /// `K4` minus one edge.
    Diamond,
    /// Paw whose pendant path is extended by one more vertex.
    Kite,
    /// `K_{1,3}`.
    Claw,
}

impl Pattern {
    pub const ALL: [Pattern; 7] = [
        Pattern::Triangle,
        Pattern::K4,
        Pattern::K5,
        Pattern::Paw,
        Pattern::Diamond,
        Pattern::Kite,
        Pattern::Claw,
    ];

    pub fn graph(self) -> Graph {
        let (n, edges): (usize, &[(usize, usize)]) = match self {
            Pattern::Triangle => (3, &[(0, 1), (0, 2), (1, 2)]),
            Pattern::K4 => return Graph::complete(4),
            Pattern::K5 => return Graph::complete(5),
            Pattern::Paw => (4, &[(0, 1), (0, 2), (1, 2), (2, 3)]),
            Pattern::Diamond => (4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]),
            Pattern::Kite => (5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]),
            Pattern::Claw => (4, &[(0, 1), (0, 2), (0, 3)]),
        };
        Graph::from_edges(n, edges.iter().copied()).expect("valid pattern")
    }

    pub fn name(self) -> &'static str {
        match self {
            Pattern::Triangle => "triangle",
            Pattern::K4 => "K4",
            Pattern::K5 => "K5",
            Pattern::Paw => "paw",
            Pattern::Diamond => "diamond",
            Pattern::Kite => "kite",
            Pattern::Claw => "claw",
        }
    }
}

pub fn contains_subgraph(g: &Graph, pattern: Pattern) -> bool {
    find_embedding(g, &pattern.graph()).is_some()
}

/// An injective map from pattern vertices to `g` carrying pattern edges to
/// edges of `g`, found by backtracking with degree pruning.
pub fn find_embedding(g: &Graph, pattern: &Graph) -> Option<Vec<usize>> {
    let k = pattern.n();
    if k > g.n() {
        return None;
    }
    // Place high-degree pattern vertices first, preferring ones adjacent to
    // already placed vertices.
    let mut order: Vec<usize> = Vec::with_capacity(k);
    let mut placed = vec![false; k];
    while order.len() < k {
        let next = (0..k)
            .filter(|&p| !placed[p])
            .max_by_key(|&p| {
                let links = pattern.neighbors(p).iter().filter(|&&q| placed[q]).count();
                (links, pattern.degree(p), std::cmp::Reverse(p))
            })
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
    }

    fn extend(
        g: &Graph,
        pattern: &Graph,
        order: &[usize],
        depth: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let p = order[depth];
        for v in 0..g.n() {
            if used[v] || g.degree(v) < pattern.degree(p) {
                continue;
            }
            let fits = pattern
                .neighbors(p)
                .iter()
                .all(|&q| image[q] == usize::MAX || g.has_edge(v, image[q]));
            if !fits {
                continue;
            }
            image[p] = v;
            used[v] = true;
            if extend(g, pattern, order, depth + 1, image, used) {
                return true;
            }
            image[p] = usize::MAX;
            used[v] = false;
        }
        false
    }

    let mut image = vec![usize::MAX; k];
    let mut used = vec![false; g.n()];
    extend(g, pattern, &order, 0, &mut image, &mut used).then_some(image)
}

/// Complete-join decomposition `G = G' ⋆ S_1 ⋆ ... ⋆ S_k` into stable
/// triples `S_i` and a part `G'` with stability number at most two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CojoinDecomposition {
    /// Vertices of `G'`, ascending.
    pub rest: Vec<usize>,
    /// Stable triples, each ascending, ordered by smallest vertex.
    pub triples: Vec<[usize; 3]>,
}

/// Applies when the complement of `g` contains none of `K4`, paw, diamond.
///
/// In such a complement every triangle is a whole connected component (any
/// edge leaving it would form a paw), so the triples are exactly the
/// triangle components of the complement and what remains is
/// triangle-free in the complement.
pub fn cojoin_decompose(g: &Graph) -> Option<CojoinDecomposition> {
    let co = g.complement();
    if [Pattern::K4, Pattern::Paw, Pattern::Diamond]
        .iter()
        .any(|&p| contains_subgraph(&co, p))
    {
        return None;
    }
    let mut rest = Vec::new();
    let mut triples = Vec::new();
    for comp in co.components() {
        let is_triangle = comp.len() == 3
            && co.has_edge(comp[0], comp[1])
            && co.has_edge(comp[0], comp[2])
            && co.has_edge(comp[1], comp[2]);
        if is_triangle {
            triples.push([comp[0], comp[1], comp[2]]);
        } else {
            rest.extend(comp);
        }
    }
    rest.sort_unstable();
    Some(CojoinDecomposition { rest, triples })
}

/// Chordless cycle on all vertices with odd length at least five.
pub fn is_odd_hole(g: &Graph) -> bool {
    let n = g.n();
    n >= 5 && n % 2 == 1 && (0..n).all(|v| g.degree(v) == 2) && g.is_connected()
}

pub fn is_odd_antihole(g: &Graph) -> bool {
    is_odd_hole(&g.complement())
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use proptest::prelude::*;

    /// Tries every injective map of the pattern into the graph.
    fn exhaustive_embedding(g: &Graph, pattern: &Graph) -> bool {
        let k = pattern.n();
        (0..g.n()).permutations(k).any(|image| {
            pattern.edges().all(|(a, b)| g.has_edge(image[a], image[b]))
        })
    }

    #[test]
    fn pattern_examples() {
        assert!(contains_subgraph(&Pattern::Paw.graph(), Pattern::Paw));
        assert!(!contains_subgraph(&Graph::cycle(4), Pattern::Triangle));
        assert!(contains_subgraph(&Graph::complete(4), Pattern::Paw));
        assert!(exhaustive_embedding(&Graph::complete(4), &Pattern::Paw.graph()));
        assert!(!contains_subgraph(&Graph::cycle(5), Pattern::Kite));
        assert!(contains_subgraph(&Graph::complete(5), Pattern::Kite));
        assert!(!contains_subgraph(&Graph::complete(4), Pattern::Kite));
    }

    #[test]
    fn pattern_sizes() {
        let sizes: Vec<(usize, usize)> = Pattern::ALL
            .iter()
            .map(|p| (p.graph().n(), p.graph().num_edges()))
            .collect();
        assert_eq!(sizes, vec![(3, 3), (4, 6), (5, 10), (4, 4), (4, 5), (5, 5), (4, 3)]);
    }

    #[test]
    fn decomposition_examples() {
        let c5 = Graph::cycle(5);
        assert_eq!(
            cojoin_decompose(&c5),
            Some(CojoinDecomposition {
                rest: (0..5).collect(),
                triples: vec![]
            })
        );
        let k3s3 = Graph::complete(3).join(&Graph::empty(3));
        let d = cojoin_decompose(&k3s3).unwrap();
        assert_eq!(d.rest, vec![0, 1, 2]);
        assert_eq!(d.triples, vec![[3, 4, 5]]);
        let s3s3 = Graph::empty(3).join(&Graph::empty(3));
        let d = cojoin_decompose(&s3s3).unwrap();
        assert!(d.rest.is_empty());
        assert_eq!(d.triples, vec![[0, 1, 2], [3, 4, 5]]);
        for (i, t) in d.triples.iter().enumerate() {
            for &a in t {
                for v in (0..6).filter(|v| !t.contains(v)) {
                    assert!(s3s3.has_edge(a, v), "triple {i} not joined to {v}");
                }
            }
        }
        // complement contains a paw
        assert_eq!(cojoin_decompose(&Pattern::Paw.graph().complement()), None);
    }

    #[test]
    fn hole_detection() {
        assert!(is_odd_hole(&Graph::cycle(5)));
        assert!(is_odd_hole(&Graph::cycle(7)));
        assert!(!is_odd_hole(&Graph::cycle(6)));
        assert!(!is_odd_hole(&Graph::cycle(3)));
        assert!(is_odd_antihole(&Graph::cycle(7).complement()));
        assert!(!is_odd_hole(&Graph::path(4)));
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
                Graph::from_edges(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn embedding_agrees_with_exhaustive_search(g in arb_graph(7)) {
            for p in Pattern::ALL {
                prop_assert_eq!(contains_subgraph(&g, p), exhaustive_embedding(&g, &p.graph()), "{:?}", p);
            }
        }

        #[test]
        fn decomposition_is_a_complete_join(g in arb_graph(8)) {
            if let Some(d) = cojoin_decompose(&g) {
                let mut all: Vec<usize> = d.rest.clone();
                for t in &d.triples {
                    prop_assert!(crate::graph::is_stable(&g, t));
                    all.extend(t);
                    for &a in t {
                        for v in (0..g.n()).filter(|v| !t.contains(v)) {
                            prop_assert!(g.has_edge(a, v));
                        }
                    }
                }
                all.sort_unstable();
                prop_assert_eq!(all, (0..g.n()).collect::<Vec<_>>());
                prop_assert!(crate::graph::stability_number(&g.induced(&d.rest)).unwrap() <= 2);
            }
        }
    }
}

//! Maximum matchings: Edmonds' blossom algorithm for cardinality, an exact
//! memoized search for rational edge weights, and hypomatchability.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num::Zero;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::Rational;

/// Edge weights keyed by `(u, v)` with `u < v`. Missing edges weigh zero.
pub type EdgeWeights = BTreeMap<(usize, usize), Rational>;

fn norm(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Maximum matching containing every `forced` edge.
///
/// Without weights the result has maximum cardinality (blossom algorithm).
/// With weights it has maximum total weight, found by exact search over the
/// vertices not covered by forced edges (capped by
/// [`Caps::weighted_matching`]). Edges are returned as `(u, v)` with `u < v`,
/// sorted.
pub fn maximum_matching(
    g: &Graph,
    weights: Option<&EdgeWeights>,
    forced: &[(usize, usize)],
) -> Result<Vec<(usize, usize)>> {
    let n = g.n();
    let mut covered = vec![false; n];
    let mut result = Vec::new();
    for &(u, v) in forced {
        g.check_vertex(u)?;
        g.check_vertex(v)?;
        if !g.has_edge(u, v) {
            return Err(Error::ForcedEdgeConflict(format!(
                "{{{u},{v}}} is not an edge"
            )));
        }
        for x in [u, v] {
            if covered[x] {
                return Err(Error::ForcedEdgeConflict(format!(
                    "vertex {x} is covered by two forced edges"
                )));
            }
            covered[x] = true;
        }
        result.push(norm(u, v));
    }
    let rest: Vec<usize> = (0..n).filter(|&v| !covered[v]).collect();
    let sub = g.induced(&rest);
    let free = match weights {
        None => cardinality_matching(&sub),
        Some(w) => {
            Caps::check("weighted matching", sub.n(), Caps::default().weighted_matching)?;
            let local: HashMap<(usize, usize), Rational> = sub
                .edges()
                .map(|(a, b)| {
                    let key = norm(rest[a], rest[b]);
                    ((a, b), w.get(&key).cloned().unwrap_or_else(Rational::zero))
                })
                .collect();
            weighted_matching(&sub, &local)
        }
    };
    result.extend(free.into_iter().map(|(a, b)| norm(rest[a], rest[b])));
    result.sort_unstable();
    Ok(result)
}

/// Maximum cardinality matching via Edmonds' blossom shrinking, `O(n^3)`.
pub fn cardinality_matching(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    const NONE: usize = usize::MAX;
    let mut mate = vec![NONE; n];

    // Greedy start.
    for u in 0..n {
        if mate[u] == NONE {
            if let Some(&v) = g.neighbors(u).iter().find(|&&v| mate[v] == NONE) {
                mate[u] = v;
                mate[v] = u;
            }
        }
    }

    let mut parent = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    let mut blossom = vec![false; n];

    let lca = |mate: &[usize], base: &[usize], parent: &[usize], mut a: usize, mut b: usize| {
        let mut seen = vec![false; n];
        loop {
            a = base[a];
            seen[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = parent[mate[a]];
        }
        loop {
            b = base[b];
            if seen[b] {
                return b;
            }
            b = parent[mate[b]];
        }
    };

    fn mark_path(
        mate: &[usize],
        base: &[usize],
        parent: &mut [usize],
        blossom: &mut [bool],
        mut v: usize,
        b: usize,
        mut child: usize,
    ) {
        while base[v] != b {
            blossom[base[v]] = true;
            blossom[base[mate[v]]] = true;
            parent[v] = child;
            child = mate[v];
            v = parent[mate[v]];
        }
    }

    for root in 0..n {
        if mate[root] != NONE {
            continue;
        }
        parent.fill(NONE);
        used.fill(false);
        for (i, b) in base.iter_mut().enumerate() {
            *b = i;
        }
        used[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut end = NONE;
        'bfs: while let Some(v) = queue.pop_front() {
            for &to in g.neighbors(v) {
                if base[v] == base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && parent[mate[to]] != NONE) {
                    let cur = lca(&mate, &base, &parent, v, to);
                    blossom.fill(false);
                    mark_path(&mate, &base, &mut parent, &mut blossom, v, cur, to);
                    mark_path(&mate, &base, &mut parent, &mut blossom, to, cur, v);
                    for i in 0..n {
                        if blossom[base[i]] {
                            base[i] = cur;
                            if !used[i] {
                                used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if parent[to] == NONE {
                    parent[to] = v;
                    if mate[to] == NONE {
                        end = to;
                        break 'bfs;
                    }
                    let next = mate[to];
                    used[next] = true;
                    queue.push_back(next);
                }
            }
        }
        let mut v = end;
        while v != NONE {
            let pv = parent[v];
            let ppv = mate[pv];
            mate[v] = pv;
            mate[pv] = v;
            v = ppv;
        }
    }

    (0..n)
        .filter(|&u| mate[u] != NONE && u < mate[u])
        .map(|u| (u, mate[u]))
        .collect()
}

/// Exact maximum weight matching by memoized branching on the lowest
/// uncovered vertex. Exponential; callers cap the vertex count.
fn weighted_matching(g: &Graph, w: &HashMap<(usize, usize), Rational>) -> Vec<(usize, usize)> {
    let n = g.n();
    let adj = g.masks().expect("capped below 64 vertices");
    let mut memo: HashMap<u64, (Rational, Option<usize>)> = HashMap::new();

    fn best(
        mask: u64,
        adj: &[u64],
        w: &HashMap<(usize, usize), Rational>,
        memo: &mut HashMap<u64, (Rational, Option<usize>)>,
    ) -> Rational {
        if mask == 0 {
            return Rational::zero();
        }
        if let Some((v, _)) = memo.get(&mask) {
            return v.clone();
        }
        let v = mask.trailing_zeros() as usize;
        let without = mask & !(1 << v);
        let mut value = best(without, adj, w, memo);
        let mut choice = None;
        let mut cand = without & adj[v];
        while cand != 0 {
            let u = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let wt = &w[&(v.min(u), v.max(u))];
            if *wt <= Rational::zero() {
                continue;
            }
            let total = wt + best(without & !(1 << u), adj, w, memo);
            if total > value {
                value = total;
                choice = Some(u);
            }
        }
        memo.insert(mask, (value.clone(), choice));
        value
    }

    let full = crate::graph::full_mask(n);
    best(full, &adj, w, &mut memo);
    let mut out = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let v = mask.trailing_zeros() as usize;
        mask &= !(1 << v);
        if let Some((_, Some(u))) = memo.get(&(mask | 1 << v)) {
            out.push(norm(v, *u));
            mask &= !(1 << *u);
        }
    }
    out.sort_unstable();
    out
}

pub fn matching_number(g: &Graph) -> usize {
    cardinality_matching(g).len()
}

pub fn has_perfect_matching(g: &Graph) -> bool {
    g.n() % 2 == 0 && 2 * matching_number(g) == g.n()
}

/// `G - u` has a perfect matching for every vertex `u`.
pub fn is_hypomatchable(g: &Graph) -> bool {
    let n = g.n();
    if n % 2 == 0 {
        return false;
    }
    (0..n).all(|u| {
        let rest: Vec<usize> = (0..n).filter(|&v| v != u).collect();
        has_perfect_matching(&g.induced(&rest))
    })
}

pub fn is_matching(edges: &[(usize, usize)]) -> bool {
    let mut seen = std::collections::HashSet::new();
    edges.iter().all(|&(u, v)| seen.insert(u) && seen.insert(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use proptest::prelude::*;

    /// Largest matching by trying every edge subset.
    fn brute_matching(g: &Graph) -> usize {
        let edges: Vec<_> = g.edges().collect();
        (0u32..1 << edges.len())
            .filter_map(|m| {
                let chosen: Vec<_> = (0..edges.len())
                    .filter(|&i| m >> i & 1 == 1)
                    .map(|i| edges[i])
                    .collect();
                is_matching(&chosen).then_some(chosen.len())
            })
            .max()
            .unwrap_or(0)
    }

    fn arb_graph(max_n: usize, max_edges: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(move |n| {
            proptest::collection::vec((0..n, 0..n), 0..=max_edges).prop_map(move |pairs| {
                Graph::from_edges(n, pairs.into_iter().filter(|(a, b)| a != b)).unwrap()
            })
        })
    }

    #[test]
    fn matching_examples() {
        let c5 = Graph::cycle(5);
        assert_eq!(brute_matching(&c5), 2);
        assert_eq!(maximum_matching(&c5, None, &[]).unwrap().len(), 2);

        let p3 = Graph::path(3);
        assert_eq!(maximum_matching(&p3, None, &[(0, 1)]).unwrap(), vec![(0, 1)]);

        assert_eq!(maximum_matching(&Graph::complete(4), None, &[]).unwrap().len(), 2);
    }

    #[test]
    fn forced_edge_errors() {
        let p3 = Graph::path(3);
        assert!(matches!(
            maximum_matching(&p3, None, &[(0, 1), (1, 2)]),
            Err(Error::ForcedEdgeConflict(_))
        ));
        assert!(matches!(
            maximum_matching(&p3, None, &[(0, 2)]),
            Err(Error::ForcedEdgeConflict(_))
        ));
    }

    #[test]
    fn weighted_prefers_heavy_edge() {
        // path 0-1-2-3 with a heavy middle edge
        let p4 = Graph::path(4);
        let mut w = EdgeWeights::new();
        w.insert((0, 1), int(2));
        w.insert((1, 2), int(5));
        w.insert((2, 3), int(2));
        assert_eq!(maximum_matching(&p4, Some(&w), &[]).unwrap(), vec![(1, 2)]);
        w.insert((1, 2), int(3));
        assert_eq!(
            maximum_matching(&p4, Some(&w), &[]).unwrap(),
            vec![(0, 1), (2, 3)]
        );
    }

    #[test]
    fn hypomatchable_examples() {
        assert!(is_hypomatchable(&Graph::cycle(5)));
        assert!(Graph::cycle(5).is_2connected());
        assert!(!is_hypomatchable(&Graph::cycle(4)));
        assert!(is_hypomatchable(&Graph::complete(3)));
        assert!(!is_hypomatchable(&Graph::path(3)));
        // brute-force check of the C5 claim
        for u in 0..5 {
            let rest: Vec<usize> = (0..5).filter(|&v| v != u).collect();
            assert_eq!(brute_matching(&Graph::cycle(5).induced(&rest)), 2);
        }
    }

    proptest! {
        #[test]
        fn blossom_matches_brute_force(g in arb_graph(10, 16)) {
            let m = cardinality_matching(&g);
            prop_assert!(is_matching(&m));
            prop_assert!(m.iter().all(|&(u, v)| g.has_edge(u, v)));
            prop_assert_eq!(m.len(), brute_matching(&g));
        }

        #[test]
        fn weighted_matches_brute_force(g in arb_graph(8, 12), seed in 0u64..1000) {
            let edges: Vec<_> = g.edges().collect();
            let w: EdgeWeights = edges
                .iter()
                .enumerate()
                .map(|(i, &e)| (e, int(((seed as i64 + 7 * i as i64) % 9) + 1)))
                .collect();
            let m = maximum_matching(&g, Some(&w), &[]).unwrap();
            prop_assert!(is_matching(&m));
            let value: Rational = m.iter().map(|e| w[e].clone()).sum();
            let best = (0u32..1 << edges.len())
                .filter_map(|mask| {
                    let chosen: Vec<_> = (0..edges.len()).filter(|&i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
                    is_matching(&chosen).then(|| chosen.iter().map(|e| w[e].clone()).sum::<Rational>())
                })
                .max()
                .unwrap();
            prop_assert_eq!(value, best);
        }
    }
}

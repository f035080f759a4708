//! Simple undirected graphs and exact small-scale invariants.

use std::collections::BTreeSet;

use crate::caps::Caps;
use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are kept sorted; the graph is never mutated after
/// construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list; duplicate edges collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::UnknownVertex { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            sets[u].insert(v);
            sets[v].insert(u);
        }
        Ok(Graph {
            adj: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn complete(n: usize) -> Self {
        Graph {
            adj: (0..n)
                .map(|u| (0..n).filter(|&v| v != u).collect())
                .collect(),
        }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    /// Complete join: the union of both graphs plus every edge between them.
    /// Vertices of `other` are shifted by `self.n()`.
    pub fn join(&self, other: &Graph) -> Graph {
        let a = self.n();
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + a, v + a)))
            .chain((0..a).flat_map(|u| (0..other.n()).map(move |v| (u, v + a))))
            .collect::<Vec<_>>();
        Graph::from_edges(a + other.n(), edges).expect("join of valid graphs")
    }

    /// Disjoint union with `other`, whose vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let a = self.n();
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + a, v + a)))
            .collect::<Vec<_>>();
        Graph::from_edges(a + other.n(), edges).expect("union of valid graphs")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn check_vertex(&self, u: usize) -> Result<()> {
        if u < self.n() {
            Ok(())
        } else {
            Err(Error::UnknownVertex {
                vertex: u,
                n: self.n(),
            })
        }
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Non-adjacent pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v))
            .collect()
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        Graph {
            adj: (0..n)
                .map(|u| {
                    let mut it = self.adj[u].iter().peekable();
                    (0..n)
                        .filter(|&v| {
                            while it.peek().is_some_and(|&&w| w < v) {
                                it.next();
                            }
                            v != u && it.peek() != Some(&&v)
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        Graph {
            adj: vertices
                .iter()
                .map(|&v| {
                    let mut ns: Vec<usize> = self.adj[v]
                        .iter()
                        .filter(|&&w| pos[w] != usize::MAX)
                        .map(|&w| pos[w])
                        .collect();
                    ns.sort_unstable();
                    ns
                })
                .collect(),
        }
    }

    /// Adjacency bitmasks; only for graphs with at most 64 vertices.
    pub fn masks(&self) -> Result<Vec<u64>> {
        Caps::check("bitmask graph", self.n(), 64)?;
        Ok(self
            .adj
            .iter()
            .map(|ns| ns.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected, at least three vertices and no cut vertex.
    pub fn is_2connected(&self) -> bool {
        let n = self.n();
        if n < 3 || !self.is_connected() {
            return false;
        }
        (0..n).all(|u| {
            let rest: Vec<usize> = (0..n).filter(|&v| v != u).collect();
            self.induced(&rest).is_connected()
        })
    }
}

/// Stable set number with the default vertex cap.
pub fn stability_number(g: &Graph) -> Result<usize> {
    stability_number_with_cap(g, Caps::default().exact_vertices)
}

pub fn stability_number_with_cap(g: &Graph, cap: usize) -> Result<usize> {
    Caps::check("stability number", g.n(), cap.min(64))?;
    Ok(max_stable_set(&g.masks()?, full_mask(g.n())).count_ones() as usize)
}

/// A maximum stable set of the vertices in `candidates`, as a bitmask.
pub(crate) fn max_stable_set(adj: &[u64], candidates: u64) -> u64 {
    fn clique_cover_bound(adj: &[u64], mut p: u64) -> u32 {
        // Greedy partition of `p` into cliques; a stable set meets each at most once.
        let mut bound = 0;
        while p != 0 {
            let v = p.trailing_zeros() as usize;
            let mut clique_cand = p & adj[v];
            p &= !(1 << v);
            while clique_cand != 0 {
                let w = clique_cand.trailing_zeros() as usize;
                clique_cand &= adj[w];
                p &= !(1 << w);
            }
            bound += 1;
        }
        bound
    }

    fn search(adj: &[u64], p: u64, current: u64, best: &mut u64) {
        if p == 0 {
            if current.count_ones() > best.count_ones() {
                *best = current;
            }
            return;
        }
        if current.count_ones() + clique_cover_bound(adj, p) <= best.count_ones() {
            return;
        }
        let v = p.trailing_zeros() as usize;
        search(adj, p & !adj[v] & !(1 << v), current | 1 << v, best);
        search(adj, p & !(1 << v), current, best);
    }

    let mut best = 0;
    search(adj, candidates, 0, &mut best);
    best
}

/// Chromatic number with the default vertex cap.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    chromatic_number_with_cap(g, Caps::default().exact_vertices)
}

/// Exact chromatic number by DSATUR branch and bound.
pub fn chromatic_number_with_cap(g: &Graph, cap: usize) -> Result<usize> {
    Caps::check("chromatic number", g.n(), cap.min(64))?;
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    let adj = g.masks()?;
    let clique = max_stable_set(&g.complement().masks()?, full_mask(n)).count_ones() as usize;

    struct Search<'a> {
        adj: &'a [u64],
        colors: Vec<usize>,
        best: usize,
        lower: usize,
    }

    impl Search<'_> {
        fn run(&mut self, colored: usize, used: usize) {
            let n = self.adj.len();
            if used >= self.best || self.best == self.lower {
                return;
            }
            if colored == n {
                self.best = used;
                return;
            }
            // Uncolored vertex with the most distinct neighbor colors, then highest degree.
            let mut pick = usize::MAX;
            let mut pick_key = (0usize, 0u32);
            for v in 0..n {
                if self.colors[v] != usize::MAX {
                    continue;
                }
                let sat = self.saturation(v);
                let key = (sat.count_ones() as usize, self.adj[v].count_ones());
                if pick == usize::MAX || key > pick_key {
                    pick = v;
                    pick_key = key;
                }
            }
            let sat = self.saturation(pick);
            for c in 0..=used {
                if c < used && sat & (1 << c) != 0 {
                    continue;
                }
                if c == used && used + 1 >= self.best {
                    break;
                }
                self.colors[pick] = c;
                self.run(colored + 1, used.max(c + 1));
                self.colors[pick] = usize::MAX;
                if self.best == self.lower {
                    return;
                }
            }
        }

        fn saturation(&self, v: usize) -> u64 {
            let mut m = self.adj[v];
            let mut sat = 0u64;
            while m != 0 {
                let w = m.trailing_zeros() as usize;
                m &= m - 1;
                if self.colors[w] != usize::MAX {
                    sat |= 1 << self.colors[w];
                }
            }
            sat
        }
    }

    let mut search = Search {
        adj: &adj,
        colors: vec![usize::MAX; n],
        best: n + 1,
        lower: clique,
    };
    search.run(0, 0);
    Ok(search.best)
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// All maximal cliques of `G[within]`, each sorted, in lexicographic order.
/// An empty `within` yields an empty list.
pub fn maximal_cliques(g: &Graph, within: &[usize]) -> Vec<Vec<usize>> {
    let mut within: Vec<usize> = within.to_vec();
    within.sort_unstable();
    within.dedup();
    let mut out = Vec::new();
    if within.is_empty() {
        return out;
    }
    let mut r = Vec::new();
    bron_kerbosch(g, &mut r, within, Vec::new(), &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<usize>,
    p: Vec<usize>,
    x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| g.has_edge(u, v)).count())
        .expect("p is nonempty");
    let mut p = p;
    let mut x = x;
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !g.has_edge(pivot, v)).collect();
    for v in candidates {
        let np = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        let nx = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        r.push(v);
        bron_kerbosch(g, r, np, nx, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

pub fn is_clique(g: &Graph, vertices: &[usize]) -> bool {
    vertices
        .iter()
        .enumerate()
        .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

pub fn is_stable(g: &Graph, vertices: &[usize]) -> bool {
    vertices
        .iter()
        .enumerate()
        .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| u != v && !g.has_edge(u, v)))
}

mod common;

use std::collections::BTreeSet;

use itertools::Itertools;
use num::Zero;
use proptest::prelude::*;

use repcolor::formulation::{with_diagonals, Objective};
use repcolor::graph::{is_clique, maximal_cliques};
use repcolor::inequalities::{internal_inequality, separate_bruteforce, SepFamily};
use repcolor::lab::{affine_dimension_masks, enumerate_colorings, mask_point};
use repcolor::matching::{is_matching, maximum_matching};
use repcolor::ordering::{
    is_consistent, lower_nonneighborhood, ordering_by_weight, ordering_consistent,
    upper_nonneighborhood,
};
use repcolor::rational::{int, ratio};
use repcolor::rep::{is_claw_free, is_quasi_line, is_spanning_subgraph_of_linegraph};
use repcolor::solvers::{solve_coloring_matching, solve_exact};
use repcolor::structure::{cojoin_decompose, contains_subgraph, Pattern};
use repcolor::{
    build_model, build_rep, Caps, Graph, Precoloring, Problem, Rational, Variant, VertexOrdering,
    WeightFunction,
};

use common::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).tuple_combinations::<(usize, usize)>();
            let edges = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn graph_and_order(max_n: usize) -> impl Strategy<Value = (Graph, VertexOrdering)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (
            Just(g),
            Just((0..n).collect::<Vec<usize>>())
                .prop_shuffle()
                .prop_map(|p| VertexOrdering::from_order(p).unwrap()),
        )
    })
}

fn dot(coeffs: &[(usize, Rational)], mask: u64) -> Rational {
    coeffs
        .iter()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .fold(Rational::zero(), |s, (_, c)| s + c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn complement_and_neighborhood_partition((g, ord) in graph_and_order(8)) {
        prop_assert_eq!(g.complement().complement(), g.clone());
        for u in 0..g.n() {
            let lower = lower_nonneighborhood(&g, &ord, u).unwrap();
            let upper = upper_nonneighborhood(&g, &ord, u).unwrap();
            let mut all: Vec<usize> = lower.iter().chain(&upper).chain(g.neighbors(u)).copied().collect();
            all.push(u);
            all.sort_unstable();
            prop_assert_eq!(all, (0..g.n()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn matching_is_maximum(g in graph(9)) {
        let m = maximum_matching(&g, None, &[]).unwrap();
        prop_assert!(is_matching(&m));
        prop_assert!(m.iter().all(|&(a, b)| g.has_edge(a, b)));
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let brute = (0..=edges.len().min(g.n() / 2))
            .rev()
            .find(|&k| edges.iter().combinations(k).any(|c| {
                let vs: BTreeSet<usize> = c.iter().flat_map(|&&(a, b)| [a, b]).collect();
                vs.len() == 2 * k
            }))
            .unwrap();
        prop_assert_eq!(m.len(), brute);
    }

    #[test]
    fn subgraph_search_matches_embedding_oracle(g in graph(7)) {
        for p in Pattern::ALL {
            let pg = p.graph();
            let pattern: Vec<(usize, usize)> = pg.edges().collect();
            prop_assert_eq!(contains_subgraph(&g, p), has_subgraph(&g, &pattern, pg.n()), "{}", p.name());
        }
    }

    #[test]
    fn cojoin_triples_are_joined(g in graph(8)) {
        if let Some(d) = cojoin_decompose(&g) {
            for t in &d.triples {
                for v in t {
                    for u in (0..g.n()).filter(|u| !t.contains(u)) {
                        prop_assert!(g.has_edge(*v, u));
                    }
                }
                prop_assert!(!g.has_edge(t[0], t[1]) && !g.has_edge(t[0], t[2]) && !g.has_edge(t[1], t[2]));
            }
        }
    }

    #[test]
    fn consistent_ordering_for_proper_precolorings(g in graph(7), seed in any::<u64>()) {
        let all = precolorings(&g, 3);
        let pre = &all[(seed % all.len() as u64) as usize];
        let rho = Precoloring::from_pairs(pre).unwrap();
        let ord = ordering_consistent(&g, &rho).unwrap();
        prop_assert!(is_consistent(&ord, &rho));
    }

    #[test]
    fn rep_structure((g, ord) in graph_and_order(7)) {
        let rep = build_rep(&g, &ord).unwrap();
        prop_assert!(is_spanning_subgraph_of_linegraph(&rep, &g));
        if is_quasi_line(rep.graph()) {
            prop_assert!(is_claw_free(rep.graph()));
        }
        prop_assert_eq!(is_quasi_line(rep.graph()), quasi_line(rep.graph()));
        prop_assert_eq!(is_claw_free(rep.graph()), claw_free(rep.graph()));
    }

    /// 0/1 points of the compact model are exactly the coloring vectors,
    /// each completes uniquely to the original model, and the maximal
    /// clique rows cut out the same 0/1 points as all clique rows.
    #[test]
    fn compact_original_and_all_cliques_agree((g, ord) in graph_and_order(6)) {
        let arcs = oriented_non_edges(&g, &ord);
        prop_assume!(arcs.len() <= 12);
        let compact = build_model(&g, &ord, Variant::Compact, &Problem::Coloring).unwrap();
        let original = build_model(&g, &ord, Variant::Original, &Problem::Coloring).unwrap();
        let colorings = coloring_masks(&g, &ord, &arcs);

        let mut all_clique_rows: Vec<Vec<usize>> = Vec::new();
        for u in 0..g.n() {
            let lower: Vec<usize> = lower_nonneighborhood(&g, &ord, u).unwrap();
            let upper: Vec<usize> = upper_nonneighborhood(&g, &ord, u).unwrap();
            for size in 0..=upper.len() {
                for k in upper.iter().combinations(size) {
                    let k: Vec<usize> = k.into_iter().copied().collect();
                    if !is_clique(&g, &k) {
                        continue;
                    }
                    let mut row: Vec<usize> = lower
                        .iter()
                        .map(|&w| arcs.iter().position(|a| a.tail == w && a.head == u).unwrap())
                        .collect();
                    row.extend(k.iter().map(|&v| arcs.iter().position(|a| a.tail == u && a.head == v).unwrap()));
                    all_clique_rows.push(row);
                }
            }
        }

        for mask in 0u64..1 << arcs.len() {
            let p = mask_point(&arcs, mask);
            let ok = compact.check_point(&p).unwrap();
            prop_assert_eq!(ok, colorings.contains(&mask), "mask {:b}", mask);
            let all_ok = all_clique_rows.iter().all(|r| r.iter().filter(|&&i| mask >> i & 1 == 1).count() <= 1);
            prop_assert_eq!(ok, all_ok);
            if ok {
                let full = with_diagonals(&g, &ord, &p).unwrap();
                prop_assert!(original.check_point(&full).unwrap());
                // colors used = n - arcs set
                let value = compact.objective.value(&p).unwrap();
                prop_assert_eq!(-value, int((g.n() - mask.count_ones() as usize) as i64));
            }
        }
    }

    #[test]
    fn precolored_model_solutions_respect_classes(g in graph(6), seed in any::<u64>()) {
        let all = precolorings(&g, 3);
        let pre = all[(seed % all.len() as u64) as usize].clone();
        let rho = Precoloring::from_pairs(&pre).unwrap();
        let ord = ordering_consistent(&g, &rho).unwrap();
        let arcs = oriented_non_edges(&g, &ord);
        let model = build_model(&g, &ord, Variant::Compact, &Problem::PrecolorExt(rho.clone())).unwrap();
        let ext = enumerate_colorings(&g, &ord, Some(&rho), &Caps::default()).unwrap();
        let color = |v: usize| pre.iter().find(|&&(u, _)| u == v).map(|&(_, c)| c);
        for part in stable_partitions(&g) {
            let mask = partition_mask(&part, &ord, &arcs);
            let respects = part.iter().all(|c| {
                c.iter().filter_map(|&v| color(v)).collect::<BTreeSet<_>>().len() <= 1
            }) && pre.iter().all(|&(u, cu)| pre.iter().all(|&(v, cv)| {
                cu != cv || part.iter().any(|c| c.contains(&u) && c.contains(&v))
            }));
            let p = mask_point(&arcs, mask);
            prop_assert_eq!(model.check_point(&p).unwrap(), respects);
            prop_assert_eq!(ext.contains(mask), respects);
        }
    }

    #[test]
    fn max_coloring_objective_identity(g in graph(6), w in proptest::collection::vec(1i64..6, 6)) {
        let w = &w[..g.n()];
        let wf = WeightFunction::from_integers(w).unwrap();
        let ord = ordering_by_weight(&g, &wf).unwrap();
        let arcs = oriented_non_edges(&g, &ord);
        let model = build_model(&g, &ord, Variant::Compact, &Problem::MaxColoring(wf)).unwrap();
        let Objective { coeffs, offset, .. } = &model.objective;
        for part in stable_partitions(&g) {
            let mask = partition_mask(&part, &ord, &arcs);
            let p = mask_point(&arcs, mask);
            let class_max: i64 = part.iter().map(|c| c.iter().map(|&v| w[v]).max().unwrap()).sum();
            prop_assert_eq!(-model.objective.value(&p).unwrap(), int(class_max));
            let dense: Vec<(usize, Rational)> = arcs.iter().enumerate()
                .filter_map(|(i, a)| coeffs.get(a).map(|c| (i, c.clone())))
                .collect();
            prop_assert_eq!(offset + dot(&dense, mask), -int(class_max));
        }
    }

    #[test]
    fn internal_rows_valid_and_dominated((g, ord) in graph_and_order(6)) {
        let arcs = oriented_non_edges(&g, &ord);
        let masks = coloring_masks(&g, &ord, &arcs);
        for size in 1..=g.n() {
            for s in (0..g.n()).combinations(size) {
                let ineq = internal_inequality(&g, &ord, &s).unwrap();
                for &m in &masks {
                    prop_assert!(ineq.evaluate(&mask_point(&arcs, m)).unwrap().1);
                }
                let sub = g.induced(&s);
                if size % 2 == 1 && alpha(&sub) <= 2 {
                    prop_assert!(ineq.rhs <= ratio(size as i64 - 1, 2));
                }
            }
        }
    }

    #[test]
    fn separation_finds_nothing_on_colorings((g, ord) in graph_and_order(5)) {
        let arcs = oriented_non_edges(&g, &ord);
        let caps = Caps::default();
        // odd-set rows are only valid when alpha <= 2
        let families: Vec<SepFamily> = SepFamily::ALL
            .into_iter()
            .filter(|f| *f != SepFamily::OddSet || alpha(&g) <= 2)
            .collect();
        for m in coloring_masks(&g, &ord, &arcs) {
            let sep = separate_bruteforce(&g, &ord, &mask_point(&arcs, m), &families, &caps).unwrap();
            prop_assert!(sep.violated.is_none());
        }
    }

    #[test]
    fn colorings_are_full_dimensional((g, ord) in graph_and_order(7)) {
        let arcs = oriented_non_edges(&g, &ord);
        let masks: Vec<u64> = coloring_masks(&g, &ord, &arcs).into_iter().collect();
        prop_assert_eq!(affine_dimension_masks(&masks, arcs.len()).unwrap(), arcs.len());
    }

    #[test]
    fn solvers_agree_with_oracles((g, ord) in graph_and_order(7), w in proptest::collection::vec((1i64..8, 1i64..4), 7)) {
        let caps = Caps::default();
        let chi = chromatic(&g);
        let s = solve_exact(&g, &ord, &Problem::Coloring, &caps).unwrap();
        prop_assert_eq!(s.colors_used, chi);
        let model = build_model(&g, &ord, Variant::Compact, &Problem::Coloring).unwrap();
        prop_assert!(model.check_point(&s.vector).unwrap());
        if alpha(&g) <= 2 {
            let m = solve_coloring_matching(&g, &caps).unwrap();
            prop_assert_eq!(m.colors_used, chi);
            let model = build_model(&g, &m.ordering, Variant::Compact, &Problem::Coloring).unwrap();
            prop_assert!(model.check_point(&m.vector).unwrap());
        }
        // rational weights: best = min over partitions of the class maxima
        let weights: Vec<Rational> = w[..g.n()].iter().map(|&(a, b)| ratio(a, b)).collect();
        let wf = WeightFunction::new(weights.clone()).unwrap();
        let by_weight = ordering_by_weight(&g, &wf).unwrap();
        let problem = Problem::MaxColoring(wf);
        let s = solve_exact(&g, &by_weight, &problem, &caps).unwrap();
        let best = stable_partitions(&g)
            .iter()
            .map(|p| p.iter().map(|c| c.iter().map(|&v| weights[v].clone()).max().unwrap()).fold(Rational::zero(), |a, b| a + b))
            .min()
            .unwrap();
        prop_assert_eq!(&s.objective, &best);
        let model = build_model(&g, &by_weight, Variant::Compact, &problem).unwrap();
        prop_assert!(model.check_point(&s.vector).unwrap());
    }
}

#[test]
fn maximal_cliques_cover_upper_neighborhoods() {
    // every vertex of a nonempty set lies in some maximal clique of it
    let g = Graph::cycle(6);
    let within = vec![0, 1, 3, 4];
    let cl = maximal_cliques(&g, &within);
    for v in within {
        assert!(cl.iter().any(|c| c.contains(&v)));
    }
}

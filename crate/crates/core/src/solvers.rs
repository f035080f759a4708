//! Solvers: matching-based coloring and precoloring extension for graphs
//! with stability number at most two, and an exact branch and bound over
//! stable sets of the auxiliary graph for every problem.

use std::collections::BTreeSet;

use num::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::formulation::{build_model, indicator_point, PointVector, Problem, Var, Variant};
use crate::graph::{stability_number_with_cap, Graph};
use crate::json::point_to_json;
use crate::matching::maximum_matching;
use crate::ordering::{ordering_consistent, Precoloring, VertexOrdering};
use crate::rational::{denominator_lcm, format_rational, int, Rational};
use crate::rep::{arcs_of, build_rep};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringSolution {
    /// Color classes, each sorted, ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
    pub colors_used: usize,
    /// Number of colors, or for max-coloring the sum over classes of the
    /// heaviest member. This is minus the model objective value.
    pub objective: Rational,
    /// Canonical arc vector under `ordering`: each class is represented by
    /// its `≺`-first member.
    pub vector: PointVector,
    pub ordering: VertexOrdering,
}

impl ColoringSolution {
    pub fn to_json(&self) -> Value {
        json!({
            "colors_used": self.colors_used,
            "classes": self
                .classes
                .iter()
                .map(|c| c.iter().map(|v| v + 1).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "objective": format_rational(&self.objective),
            "vector": point_to_json(&self.vector),
        })
    }
}

/// Canonical vector of a partition into color classes.
pub fn point_from_classes(
    g: &Graph,
    ord: &VertexOrdering,
    classes: &[Vec<usize>],
) -> Result<PointVector> {
    let arcs = arcs_of(g, ord);
    let mut ones = BTreeSet::new();
    for class in classes {
        let Some(&r) = class.iter().min_by_key(|&&v| ord.rank(v)) else {
            continue;
        };
        for &v in class.iter().filter(|&&v| v != r) {
            if g.has_edge(r, v) {
                return Err(Error::Precondition(format!(
                    "class contains the edge {{{r},{v}}}"
                )));
            }
            ones.insert(Var::new(r, v));
        }
    }
    Ok(indicator_point(&arcs, &ones))
}

/// Color classes of a 0/1 arc vector: every vertex without an incoming arc
/// leads the class made of itself and its out-neighbors.
pub fn classes_from_point(
    g: &Graph,
    ord: &VertexOrdering,
    p: &PointVector,
) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    let mut leader: Vec<Option<usize>> = vec![None; n];
    for a in arcs_of(g, ord) {
        let x = p
            .get(&a)
            .ok_or_else(|| Error::MissingCoordinate(a.to_string()))?;
        if x.is_one() {
            if leader[a.head].is_some() {
                return Err(Error::Precondition(format!(
                    "vertex {} has two representatives",
                    a.head
                )));
            }
            leader[a.head] = Some(a.tail);
        } else if !x.is_zero() {
            return Err(Error::Precondition("vector is not integral".into()));
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for v in 0..n {
        if leader[v].is_none() {
            slot[v] = classes.len();
            classes.push(vec![v]);
        }
    }
    for v in 0..n {
        if let Some(r) = leader[v] {
            if leader[r].is_some() {
                return Err(Error::Precondition(format!(
                    "representative {r} is itself represented"
                )));
            }
            classes[slot[r]].push(v);
        }
    }
    for c in classes.iter_mut() {
        c.sort_unstable();
    }
    classes.sort();
    Ok(classes)
}

fn require_alpha_two(g: &Graph, caps: &Caps) -> Result<()> {
    let alpha = stability_number_with_cap(g, caps.stable_vertices)?;
    if alpha > 2 {
        return Err(Error::Precondition(format!(
            "stability number is {alpha}, the matching solver needs at most 2"
        )));
    }
    Ok(())
}

fn classes_from_matching(n: usize, m: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut matched = vec![false; n];
    let mut classes: Vec<Vec<usize>> = m
        .iter()
        .map(|&(a, b)| {
            matched[a] = true;
            matched[b] = true;
            vec![a.min(b), a.max(b)]
        })
        .collect();
    classes.extend((0..n).filter(|&v| !matched[v]).map(|v| vec![v]));
    classes.sort();
    classes
}

/// Optimal coloring of a graph with `α(G) <= 2`: color classes are the
/// edges of a maximum matching of the complement plus singletons, so
/// `χ(G) = n - ν(complement)`.
pub fn solve_coloring_matching(g: &Graph, caps: &Caps) -> Result<ColoringSolution> {
    require_alpha_two(g, caps)?;
    let m = maximum_matching(&g.complement(), None, &[])?;
    let classes = classes_from_matching(g.n(), &m);
    let ord = VertexOrdering::identity(g.n());
    let vector = point_from_classes(g, &ord, &classes)?;
    Ok(ColoringSolution {
        colors_used: classes.len(),
        objective: int(classes.len() as i64),
        classes,
        vector,
        ordering: ord,
    })
}

/// Optimal precoloring extension for `α(G) <= 2`.
///
/// Complement edges between distinct precolor classes are deleted and each
/// two-vertex precolor class is a forced edge; a maximum matching containing
/// the forced edges gives the classes, using `n - |M|` colors.
pub fn solve_precolor_ext_matching(
    g: &Graph,
    rho: &Precoloring,
    caps: &Caps,
) -> Result<ColoringSolution> {
    for &v in rho.assignment().keys() {
        g.check_vertex(v)?;
    }
    rho.check_proper(g)?;
    require_alpha_two(g, caps)?;
    let classes_rho = rho.classes();
    if let Some((c, members)) = classes_rho.iter().find(|(_, m)| m.len() > 2) {
        return Err(Error::Infeasible(format!(
            "color {c} has {} precolored vertices",
            members.len()
        )));
    }
    let h = Graph::from_edges(
        g.n(),
        g.complement().edges().filter(|&(a, b)| {
            !matches!((rho.color(a), rho.color(b)), (Some(x), Some(y)) if x != y)
        }),
    )?;
    let forced: Vec<(usize, usize)> = classes_rho
        .values()
        .filter(|m| m.len() == 2)
        .map(|m| (m[0], m[1]))
        .collect();
    let m = maximum_matching(&h, None, &forced)?;
    let classes = classes_from_matching(g.n(), &m);
    let ord = ordering_consistent(g, rho)?;
    let vector = point_from_classes(g, &ord, &classes)?;
    Ok(ColoringSolution {
        colors_used: classes.len(),
        objective: int(classes.len() as i64),
        classes,
        vector,
        ordering: ord,
    })
}

/// Exact solution of `problem` on `(g, ord)` as a maximum weight stable set
/// of the auxiliary graph that respects the model fixings.
///
/// Among optimal vectors the lexicographically smallest one (over arcs
/// sorted by vertex ids, with `0 < 1`) is returned.
pub fn solve_exact(
    g: &Graph,
    ord: &VertexOrdering,
    problem: &Problem,
    caps: &Caps,
) -> Result<ColoringSolution> {
    let model = build_model(g, ord, Variant::Compact, problem)?;
    let rep = build_rep(g, ord)?;
    let arcs = rep.arcs().to_vec();
    Caps::check("exact solver arcs", arcs.len(), caps.stable_vertices.min(64))?;
    let adj = rep.graph().masks()?;

    let weights: Vec<Rational> = arcs
        .iter()
        .map(|a| {
            model
                .objective
                .coeffs
                .get(a)
                .cloned()
                .unwrap_or_else(Rational::zero)
        })
        .collect();
    let scale = Rational::from_integer(denominator_lcm(weights.iter()));
    let mut w = Vec::with_capacity(arcs.len());
    for x in &weights {
        if x.is_negative() {
            return Err(Error::InvalidWeights("negative arc weight".into()));
        }
        let scaled = (x * &scale).to_integer();
        w.push(scaled.to_i128().filter(|v| *v < i128::MAX / 128).ok_or_else(|| {
            Error::InvalidWeights("weights too large for the exact solver".into())
        })?);
    }

    let mut fixed_one = 0u64;
    let mut fixed_zero = 0u64;
    for (v, &val) in &model.fixings {
        let i = rep
            .index_of(v)
            .ok_or_else(|| Error::MissingCoordinate(v.to_string()))?;
        if val {
            fixed_one |= 1 << i;
        } else {
            fixed_zero |= 1 << i;
        }
    }
    if fixed_one & fixed_zero != 0 {
        return Err(Error::Infeasible("an arc is fixed to both 0 and 1".into()));
    }
    let mut blocked = 0u64;
    for i in (0..arcs.len()).filter(|&i| fixed_one >> i & 1 == 1) {
        if adj[i] & fixed_one != 0 {
            return Err(Error::Infeasible("arcs fixed to 1 conflict".into()));
        }
        blocked |= adj[i];
    }
    let all = if arcs.len() == 64 { u64::MAX } else { (1u64 << arcs.len()) - 1 };
    let candidates = all & !fixed_one & !fixed_zero & !blocked;

    let best = max_weight_stable(&adj, &w, candidates, fixed_one);
    let ones: BTreeSet<Var> = (0..arcs.len())
        .filter(|&i| best >> i & 1 == 1)
        .map(|i| arcs[i])
        .collect();
    let vector = indicator_point(&arcs, &ones);
    let classes = classes_from_point(g, ord, &vector)?;
    let objective = -model.objective.value(&vector)?;
    Ok(ColoringSolution {
        colors_used: classes.len(),
        objective,
        classes,
        vector,
        ordering: ord.clone(),
    })
}

/// Branch and bound on the lowest undecided arc, trying 0 before 1 and only
/// accepting strict improvements, so the first optimum found is the
/// lexicographically smallest. The bound is a greedy weighted clique cover.
fn max_weight_stable(adj: &[u64], w: &[i128], candidates: u64, start: u64) -> u64 {
    fn weight(w: &[i128], mut s: u64) -> i128 {
        let mut t = 0;
        while s != 0 {
            let i = s.trailing_zeros() as usize;
            t += w[i];
            s &= s - 1;
        }
        t
    }

    fn bound(adj: &[u64], w: &[i128], mut p: u64) -> i128 {
        let mut total = 0;
        while p != 0 {
            let v = p.trailing_zeros() as usize;
            p &= !(1 << v);
            let mut cand = p & adj[v];
            let mut heaviest = w[v];
            while cand != 0 {
                let u = cand.trailing_zeros() as usize;
                cand &= adj[u];
                p &= !(1 << u);
                heaviest = heaviest.max(w[u]);
            }
            total += heaviest;
        }
        total
    }

    struct Search<'a> {
        adj: &'a [u64],
        w: &'a [i128],
        best: u64,
        best_value: i128,
    }

    impl Search<'_> {
        fn go(&mut self, p: u64, current: u64, value: i128) {
            if p == 0 {
                if value > self.best_value {
                    self.best = current;
                    self.best_value = value;
                }
                return;
            }
            if value + bound(self.adj, self.w, p) <= self.best_value {
                return;
            }
            let i = p.trailing_zeros() as usize;
            let rest = p & !(1 << i);
            self.go(rest, current, value);
            self.go(rest & !self.adj[i], current | 1 << i, value + self.w[i]);
        }
    }

    let start_value = weight(w, start);
    let mut s = Search {
        adj,
        w,
        best: start,
        best_value: start_value - 1,
    };
    s.go(candidates, start, start_value);
    s.best
}

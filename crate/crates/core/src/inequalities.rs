//! Matching, internal and clique-family inequalities, facet sufficient
//! conditions, and a brute-force separator.

use itertools::Itertools;
use num::{One, Zero};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::formulation::{build_model, Family, LinearInequality, PointVector, Problem, Var, Variant};
use crate::graph::{chromatic_number, is_clique, maximal_cliques, stability_number, Graph};
use crate::matching::is_hypomatchable;
use crate::ordering::VertexOrdering;
use crate::rational::{int, Rational};
use crate::rep::{build_rep, RepGraph};
use crate::structure::{is_odd_antihole, is_odd_hole};

/// Maps an edge `{a, b}` of the complement to its arc under `ord`.
pub fn arc_of(ord: &VertexOrdering, a: usize, b: usize) -> Var {
    if ord.precedes(a, b) {
        Var::new(a, b)
    } else {
        Var::new(b, a)
    }
}

/// Degree, odd-set and nonnegativity inequalities of the matching polytope
/// of `h`, with the edge `{a, b}` (`a < b`) named `var_of(a, b)`.
///
/// Odd sets range over all `S` with `3 <= |S| <= odd_set_cap`. Rows with
/// empty support (`0 <= k`) are left out.
pub fn matching_system(
    h: &Graph,
    odd_set_cap: usize,
    var_of: impl Fn(usize, usize) -> Var,
) -> Vec<LinearInequality> {
    matching_system_impl(h, odd_set_cap, false, var_of)
}

/// Same polytope with odd sets restricted to those inducing a connected
/// subgraph; the others are sums of smaller rows.
pub fn matching_system_connected(
    h: &Graph,
    odd_set_cap: usize,
    var_of: impl Fn(usize, usize) -> Var,
) -> Vec<LinearInequality> {
    matching_system_impl(h, odd_set_cap, true, var_of)
}

fn matching_system_impl(
    h: &Graph,
    odd_set_cap: usize,
    connected_only: bool,
    var_of: impl Fn(usize, usize) -> Var,
) -> Vec<LinearInequality> {
    let n = h.n();
    let mut rows = Vec::new();
    for v in 0..n {
        if h.degree(v) == 0 {
            continue;
        }
        let vars = h.neighbors(v).iter().map(|&u| var_of(v.min(u), v.max(u)));
        rows.push(LinearInequality::sum_le(vars, int(1), Family::Degree));
    }
    let mut size = 3;
    while size <= odd_set_cap.min(n) {
        for s in (0..n).combinations(size) {
            let inside: Vec<Var> = s
                .iter()
                .tuple_combinations()
                .filter(|(&a, &b)| h.has_edge(a, b))
                .map(|(&a, &b)| var_of(a, b))
                .collect();
            if inside.is_empty() || connected_only && !h.induced(&s).is_connected() {
                continue;
            }
            rows.push(LinearInequality::sum_le(
                inside,
                int(((size - 1) / 2) as i64),
                Family::OddSet,
            ));
        }
        size += 2;
    }
    for (a, b) in h.edges() {
        rows.push(LinearInequality::new(
            [(var_of(a, b), Rational::one())],
            crate::formulation::Sense::Ge,
            Rational::zero(),
            Family::Nonneg,
        ));
    }
    rows
}

/// Matching system of the complement of `g`, on the arcs of `ord`.
pub fn complement_matching_system(
    g: &Graph,
    ord: &VertexOrdering,
    odd_set_cap: usize,
) -> Vec<LinearInequality> {
    matching_system(&g.complement(), odd_set_cap, |a, b| arc_of(ord, a, b))
}

/// `sum_{u in S} sum_{w in N⁻(u) ∩ S} x_wu <= |S| - χ(G[S])`.
pub fn internal_inequality(g: &Graph, ord: &VertexOrdering, s: &[usize]) -> Result<LinearInequality> {
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    for &v in &s {
        g.check_vertex(v)?;
    }
    let chi = chromatic_number(&g.induced(&s))?;
    Ok(internal_with_chi(g, ord, &s, chi))
}

fn internal_with_chi(g: &Graph, ord: &VertexOrdering, s: &[usize], chi: usize) -> LinearInequality {
    let vars = s
        .iter()
        .tuple_combinations()
        .filter(|(&a, &b)| !g.has_edge(a, b))
        .map(|(&a, &b)| arc_of(ord, a, b));
    LinearInequality::sum_le(vars, int((s.len() - chi) as i64), Family::Internal)
}

/// Sufficient condition under which an internal inequality is a facet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FacetCondition {
    OddHole,
    OddAntihole,
    /// `α(G[S]) <= 2` and the complement of `G[S]` is 2-connected and
    /// hypomatchable.
    Alpha2Hypomatchable,
    None,
}

impl FacetCondition {
    pub fn tag(self) -> &'static str {
        match self {
            FacetCondition::OddHole => "odd_hole",
            FacetCondition::OddAntihole => "odd_antihole",
            FacetCondition::Alpha2Hypomatchable => "alpha2_hypomatchable",
            FacetCondition::None => "none",
        }
    }
}

/// First condition that holds, in declaration order.
pub fn internal_facet_sufficient(g: &Graph, s: &[usize]) -> Result<FacetCondition> {
    for &v in s {
        g.check_vertex(v)?;
    }
    let h = g.induced(s);
    if is_odd_hole(&h) {
        return Ok(FacetCondition::OddHole);
    }
    if is_odd_antihole(&h) {
        return Ok(FacetCondition::OddAntihole);
    }
    let co = h.complement();
    if stability_number(&h)? <= 2 && co.is_2connected() && is_hypomatchable(&co) {
        return Ok(FacetCondition::Alpha2Hypomatchable);
    }
    Ok(FacetCondition::None)
}

/// Clique-family inequality for the family `f` of cliques of `h` and
/// `1 <= p <= |f|`:
///
/// ```text
/// (p - r - 1) sum_{V_{p-1}} x + (p - r) sum_{V_{>=p}} x <= (p - r) floor(t / p)
/// ```
///
/// where `t = |f|`, `r = t mod p` and `V_k` / `V_{>=k}` are the vertices
/// covered by exactly / at least `k` members.
pub fn clique_family_inequality(
    h: &Graph,
    f: &[Vec<usize>],
    p: usize,
    var_of: impl Fn(usize) -> Var,
) -> Result<LinearInequality> {
    let t = f.len();
    if p == 0 || p > t {
        return Err(Error::InvalidCliqueFamily(format!(
            "p = {p} outside 1..={t}"
        )));
    }
    let mut cover = vec![0usize; h.n()];
    for (i, k) in f.iter().enumerate() {
        for &v in k {
            h.check_vertex(v)?;
        }
        if !is_clique(h, k) || k.iter().duplicates().next().is_some() {
            return Err(Error::InvalidCliqueFamily(format!("member {i} is not a clique")));
        }
        for &v in k {
            cover[v] += 1;
        }
    }
    let r = t % p;
    let low = int((p - r - 1) as i64);
    let high = int((p - r) as i64);
    let coeffs = (0..h.n()).filter_map(|v| match cover[v] {
        c if c >= p => Some((var_of(v), high.clone())),
        c if c + 1 == p => Some((var_of(v), low.clone())),
        _ => None,
    });
    Ok(LinearInequality::new(
        coeffs,
        crate::formulation::Sense::Le,
        int(((p - r) * (t / p)) as i64),
        Family::CliqueFamily,
    ))
}

/// Clique-family inequality over the auxiliary graph, with families given
/// as lists of arc positions.
pub fn clique_family_on_rep(rep: &RepGraph, f: &[Vec<usize>], p: usize) -> Result<LinearInequality> {
    clique_family_inequality(rep.graph(), f, p, |i| rep.arcs()[i])
}

/// Families searched by [`separate_bruteforce`], in search order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SepFamily {
    /// Rows of the compact model.
    Model,
    OddSet,
    Internal,
    CliqueFamily,
}

impl SepFamily {
    pub const ALL: [SepFamily; 4] = [
        SepFamily::Model,
        SepFamily::OddSet,
        SepFamily::Internal,
        SepFamily::CliqueFamily,
    ];

    pub fn parse(s: &str) -> Option<SepFamily> {
        Some(match s {
            "model" | "clique" => SepFamily::Model,
            "odd-set" => SepFamily::OddSet,
            "internal" => SepFamily::Internal,
            "clique-family" => SepFamily::CliqueFamily,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    /// Most violated inequality of the first family with a violation, and
    /// the violation amount.
    pub violated: Option<(LinearInequality, Rational)>,
    /// False when some searched family was truncated by a cap.
    pub exhausted: bool,
}

fn most_violated(
    candidates: impl Iterator<Item = Result<LinearInequality>>,
    p: &PointVector,
) -> Result<Option<(LinearInequality, Rational)>> {
    let mut best: Option<(LinearInequality, Rational)> = None;
    for c in candidates {
        let c = c?;
        let v = c.violation(p)?;
        if v > Rational::zero() && best.as_ref().map_or(true, |(_, b)| v > *b) {
            best = Some((c, v));
        }
    }
    Ok(best)
}

/// Searches `families` in the fixed order model rows, odd-set, internal,
/// clique-family and returns the most violated inequality of the first
/// family that has one. Ties keep the first candidate in enumeration order
/// (subsets by size, then lexicographically).
pub fn separate_bruteforce(
    g: &Graph,
    ord: &VertexOrdering,
    p: &PointVector,
    families: &[SepFamily],
    caps: &Caps,
) -> Result<Separation> {
    ord.check_graph(g)?;
    let n = g.n();
    let mut exhausted = true;
    for fam in SepFamily::ALL {
        if !families.contains(&fam) {
            continue;
        }
        let found = match fam {
            SepFamily::Model => {
                let m = build_model(g, ord, Variant::Compact, &Problem::Coloring)?;
                most_violated(m.constraints.into_iter().map(Ok), p)?
            }
            SepFamily::OddSet => {
                if n > caps.odd_set {
                    exhausted = false;
                }
                let co = g.complement();
                let rows = matching_system(&co, caps.odd_set, |a, b| arc_of(ord, a, b))
                    .into_iter()
                    .filter(|r| r.family == Family::OddSet);
                most_violated(rows.map(Ok), p)?
            }
            SepFamily::Internal => {
                if n > caps.internal {
                    exhausted = false;
                }
                let subsets = (2..=caps.internal.min(n)).flat_map(|k| (0..n).combinations(k));
                let mut cands = Vec::new();
                for s in subsets {
                    let shell = internal_with_chi(g, ord, &s, s.len());
                    // rhs >= 0, so rows with nonpositive lhs cannot be violated
                    if shell.lhs(p)? <= Rational::zero() {
                        continue;
                    }
                    let chi = chromatic_number(&g.induced(&s))?;
                    cands.push(Ok(internal_with_chi(g, ord, &s, chi)));
                }
                most_violated(cands.into_iter(), p)?
            }
            SepFamily::CliqueFamily => {
                let rep = build_rep(g, ord)?;
                let all: Vec<usize> = (0..rep.num_arcs()).collect();
                let cliques = maximal_cliques(rep.graph(), &all);
                if cliques.len() > caps.clique_family {
                    exhausted = false;
                }
                let mut cands = Vec::new();
                for t in 1..=caps.clique_family.min(cliques.len()) {
                    for fam in cliques.iter().cloned().combinations(t) {
                        for q in 1..=t {
                            cands.push(clique_family_on_rep(&rep, &fam, q));
                        }
                    }
                }
                most_violated(cands.into_iter(), p)?
            }
        };
        if found.is_some() {
            return Ok(Separation {
                violated: found,
                exhausted,
            });
        }
    }
    Ok(Separation {
        violated: None,
        exhausted,
    })
}

/// Every listed point satisfies `ineq`.
pub fn check_validity(ineq: &LinearInequality, vertices: &[PointVector]) -> Result<bool> {
    for v in vertices {
        if !ineq.evaluate(v)?.1 {
            return Ok(false);
        }
    }
    Ok(true)
}

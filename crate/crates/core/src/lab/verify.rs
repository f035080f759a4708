//! Verification routines built on exact enumeration, the rational simplex
//! and double description.

use std::collections::BTreeSet;

use itertools::Itertools;
use num::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::formulation::{build_model, Family, LinearInequality, Problem, Sense, Var, Variant};
use crate::graph::{maximal_cliques, Graph};
use crate::inequalities::{clique_family_on_rep, matching_system};
use crate::json::var_key;
use crate::lab::dd::polytope_vertices;
use crate::lab::enumerate::{
    enumerate_colorings, enumerate_complement_matchings, enumerate_stable_sets, VertexSetEnumeration,
};
use crate::lab::linalg::affine_dimension_masks;
use crate::lab::simplex::{maximize, LpOutcome, LpRow};
use crate::ordering::{Precoloring, VertexOrdering};
use crate::rational::{format_rational, Rational};
use crate::rep::{build_h_g, build_rep};

/// Outcome of a verification.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub holds: bool,
    /// Counterexamples or diagnostics, at most a handful.
    pub witnesses: Vec<Value>,
    /// False when the check was truncated by a cap and is not a proof.
    pub exhausted: bool,
}

impl Verdict {
    fn pass() -> Self {
        Verdict {
            holds: true,
            witnesses: Vec::new(),
            exhausted: true,
        }
    }

    fn fail(witnesses: Vec<Value>) -> Self {
        Verdict {
            holds: false,
            witnesses,
            exhausted: true,
        }
    }
}

const MAX_WITNESSES: usize = 5;

fn mask_json(arcs: &[Var], mask: u64) -> Value {
    let set: Vec<Value> = (0..arcs.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| json!(var_key(&arcs[i])))
        .collect();
    Value::Array(set)
}

fn symmetric_difference(a: &VertexSetEnumeration, b: &VertexSetEnumeration) -> Vec<Value> {
    let sa: BTreeSet<u64> = a.masks.iter().copied().collect();
    let sb: BTreeSet<u64> = b.masks.iter().copied().collect();
    sa.symmetric_difference(&sb)
        .take(MAX_WITNESSES)
        .map(|&m| {
            json!({
                "vector": mask_json(&a.arcs, m),
                "only_in": if sa.contains(&m) { "left" } else { "right" },
            })
        })
        .collect()
}

/// Coloring vectors equal stable set vectors of the auxiliary graph.
pub fn verify_coltostab(g: &Graph, ord: &VertexOrdering, caps: &Caps) -> Result<Verdict> {
    let cols = enumerate_colorings(g, ord, None, caps)?;
    let stab = enumerate_stable_sets(&build_rep(g, ord)?, caps)?;
    Ok(if cols.same_vectors(&stab) {
        Verdict::pass()
    } else {
        Verdict::fail(symmetric_difference(&cols, &stab))
    })
}

/// Precoloring extension vectors equal the coloring vectors that satisfy
/// the precoloring fixings of the model.
pub fn verify_preext_identity(
    g: &Graph,
    rho: &Precoloring,
    ord: &VertexOrdering,
    caps: &Caps,
) -> Result<Verdict> {
    let model = build_model(g, ord, Variant::Compact, &Problem::PrecolorExt(rho.clone()))?;
    let ext = enumerate_colorings(g, ord, Some(rho), caps)?;
    let all = enumerate_colorings(g, ord, None, caps)?;
    let mut fixed_one = 0u64;
    let mut fixed_zero = 0u64;
    for (v, &val) in &model.fixings {
        let i = all
            .arcs
            .binary_search(v)
            .map_err(|_| Error::MissingCoordinate(v.to_string()))?;
        if val {
            fixed_one |= 1 << i;
        } else {
            fixed_zero |= 1 << i;
        }
    }
    let filtered = VertexSetEnumeration {
        arcs: all.arcs.clone(),
        masks: all
            .masks
            .iter()
            .copied()
            .filter(|m| m & fixed_one == fixed_one && m & fixed_zero == 0)
            .collect(),
        source: all.source,
    };
    Ok(if ext.same_vectors(&filtered) {
        Verdict::pass()
    } else {
        Verdict::fail(symmetric_difference(&ext, &filtered))
    })
}

/// Every matching of the complement is a coloring vector and satisfies every
/// compact model row.
pub fn verify_match_subset(g: &Graph, ord: &VertexOrdering, caps: &Caps) -> Result<Verdict> {
    let matchings = enumerate_complement_matchings(g, ord, caps)?;
    let cols = enumerate_colorings(g, ord, None, caps)?;
    let model = build_model(g, ord, Variant::Compact, &Problem::Coloring)?;
    let rows = dense_rows(&cols.arcs, &model.constraints)?;
    let mut witnesses = Vec::new();
    for &m in &matchings.masks {
        if !cols.contains(m) || !rows.iter().all(|r| mask_satisfies(r, m)) {
            witnesses.push(json!({ "matching": mask_json(&matchings.arcs, m) }));
            if witnesses.len() == MAX_WITNESSES {
                break;
            }
        }
    }
    Ok(if witnesses.is_empty() {
        Verdict::pass()
    } else {
        Verdict::fail(witnesses)
    })
}

/// `a x <= b` rows over the positions of `arcs`.
fn dense_rows(arcs: &[Var], system: &[LinearInequality]) -> Result<Vec<LpRow>> {
    let mut out = Vec::new();
    for ineq in system {
        for (coeffs, rhs) in ineq.as_le_rows() {
            let mut dense = vec![Rational::zero(); arcs.len()];
            for (v, c) in coeffs {
                let i = arcs.binary_search(&v).map_err(|_| {
                    Error::Precondition(format!("variable {v} is not an arc of the graph"))
                })?;
                dense[i] = c;
            }
            out.push(LpRow { coeffs: dense, rhs });
        }
    }
    Ok(out)
}

fn mask_lhs(coeffs: &[Rational], mask: u64) -> Rational {
    let mut s = Rational::zero();
    for (i, c) in coeffs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            s += c;
        }
    }
    s
}

fn mask_satisfies(row: &LpRow, mask: u64) -> bool {
    mask_lhs(&row.coeffs, mask) <= row.rhs
}

fn row_lhs(row: &LpRow, x: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for (a, v) in row.coeffs.iter().zip(x) {
        if !a.is_zero() && !v.is_zero() {
            s += a * v;
        }
    }
    s
}

/// Valid on all coloring vectors, and the tight ones span an affine space
/// of dimension one less than all of them. No tight vector means no facet.
pub fn is_facet(ineq: &LinearInequality, g: &Graph, ord: &VertexOrdering, caps: &Caps) -> Result<bool> {
    let cols = enumerate_colorings(g, ord, None, caps)?;
    let mut coeffs = vec![Rational::zero(); cols.arcs.len()];
    for (v, c) in &ineq.coeffs {
        let i = cols
            .arcs
            .binary_search(v)
            .map_err(|_| Error::Precondition(format!("variable {v} is not an arc of the graph")))?;
        coeffs[i] = c.clone();
    }
    let mut tight = Vec::new();
    for &m in &cols.masks {
        let lhs = mask_lhs(&coeffs, m);
        let ok = match ineq.sense {
            Sense::Le => lhs <= ineq.rhs,
            Sense::Ge => lhs >= ineq.rhs,
            Sense::Eq => lhs == ineq.rhs,
        };
        if !ok {
            return Ok(false);
        }
        if lhs == ineq.rhs {
            tight.push(m);
        }
    }
    if tight.is_empty() {
        return Ok(false);
    }
    let d = cols.arcs.len();
    let all_dim = affine_dimension_masks(&cols.masks, d)?;
    Ok(all_dim >= 1 && affine_dimension_masks(&tight, d)? + 1 == all_dim)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharacterizationMode {
    /// `k` objectives (all ones, then seeded random ones), exact LP optimum
    /// against the best coloring vector.
    LpObjectiveProbe { k: usize, seed: u64 },
    /// Vertex set of the system's polytope against the coloring vectors.
    HullCompare,
}

fn box_rows(d: usize) -> Vec<LpRow> {
    (0..d)
        .map(|k| {
            let mut coeffs = vec![Rational::zero(); d];
            coeffs[k] = Rational::one();
            LpRow {
                coeffs,
                rhs: Rational::one(),
            }
        })
        .collect()
}

/// `max c x` over `{0 <= x <= 1 : rows}`, activating rows lazily: solve
/// with the rows in `initial`, add the most violated remaining rows, repeat.
/// The answer is exact because the final point satisfies every row.
pub fn lp_max_lazy(c: &[Rational], rows: &[LpRow], initial: &[usize]) -> LpOutcome {
    let d = c.len();
    let mut active: Vec<bool> = vec![false; rows.len()];
    for &i in initial {
        active[i] = true;
    }
    let boxes = box_rows(d);
    loop {
        let current: Vec<LpRow> = boxes
            .iter()
            .cloned()
            .chain(rows.iter().zip(&active).filter(|(_, &a)| a).map(|(r, _)| r.clone()))
            .collect();
        let out = maximize(c, &current);
        let LpOutcome::Optimal { x, .. } = &out else {
            return out;
        };
        let mut violated: Vec<(Rational, usize)> = rows
            .iter()
            .enumerate()
            .filter(|(i, _)| !active[*i])
            .filter_map(|(i, r)| {
                let v = row_lhs(r, x) - &r.rhs;
                v.is_positive().then_some((v, i))
            })
            .collect();
        if violated.is_empty() {
            return out;
        }
        violated.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, i) in violated.into_iter().take(8) {
            active[i] = true;
        }
    }
}

/// Pseudo-random objective with numerators in `-10..=10` and denominators
/// in `1..=4`.
pub fn random_objective(rng: &mut ChaCha8Rng, d: usize) -> Vec<Rational> {
    (0..d)
        .map(|_| {
            let num: i64 = rng.gen_range(-10..=10);
            let den: i64 = rng.gen_range(1..=4);
            Rational::new(num.into(), den.into())
        })
        .collect()
}

/// Whether `system` (with `0 <= x <= 1`) describes the convex hull of the
/// coloring vectors of `(g, ord)`.
pub fn verify_characterization(
    g: &Graph,
    ord: &VertexOrdering,
    system: &[LinearInequality],
    mode: CharacterizationMode,
    caps: &Caps,
) -> Result<Verdict> {
    let cols = enumerate_colorings(g, ord, None, caps)?;
    let arcs = &cols.arcs;
    let d = arcs.len();
    let mut rows = Vec::new();
    let mut cheap = Vec::new();
    for ineq in system {
        let expensive = matches!(
            ineq.family,
            Family::OddSet | Family::Internal | Family::CliqueFamily
        );
        for row in dense_rows(arcs, std::slice::from_ref(ineq))? {
            if !expensive {
                cheap.push(rows.len());
            }
            rows.push(row);
        }
    }

    // every coloring vector must satisfy the system
    for &m in &cols.masks {
        if let Some(r) = rows.iter().position(|r| !mask_satisfies(r, m)) {
            return Ok(Verdict::fail(vec![json!({
                "coloring_violates_row": r,
                "vector": mask_json(arcs, m),
            })]));
        }
    }

    match mode {
        CharacterizationMode::HullCompare => {
            Caps::check("hull comparison arcs", d, caps.hull_arcs)?;
            let mut all_rows = rows.clone();
            all_rows.extend(box_rows(d));
            let vertices = polytope_vertices(d, &all_rows)?;
            let mut witnesses = Vec::new();
            let mut masks = Vec::new();
            for v in &vertices {
                let integral = v.iter().all(|x| x.is_zero() || x.is_one());
                if integral {
                    let m = v
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| x.is_one())
                        .fold(0u64, |m, (i, _)| m | 1 << i);
                    masks.push(m);
                    if !cols.contains(m) {
                        witnesses.push(json!({ "vertex_not_a_coloring": mask_json(arcs, m) }));
                    }
                } else {
                    let coords: serde_json::Map<String, Value> = arcs
                        .iter()
                        .zip(v)
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(a, x)| (var_key(a), json!(format_rational(x))))
                        .collect();
                    witnesses.push(json!({ "fractional_vertex": coords }));
                }
                if witnesses.len() == MAX_WITNESSES {
                    break;
                }
            }
            masks.sort_unstable();
            if witnesses.is_empty() && masks != cols.masks {
                // a coloring vector that is not a vertex cannot happen for 0/1 points
                witnesses.push(json!({ "vertex_count": vertices.len(), "colorings": cols.len() }));
            }
            Ok(if witnesses.is_empty() {
                Verdict::pass()
            } else {
                Verdict::fail(witnesses)
            })
        }
        CharacterizationMode::LpObjectiveProbe { k, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for probe in 0..k {
                // the first probe is the coloring objective itself
                let c = if probe == 0 {
                    vec![Rational::one(); d]
                } else {
                    random_objective(&mut rng, d)
                };
                let best = cols
                    .masks
                    .iter()
                    .map(|&m| mask_lhs(&c, m))
                    .max()
                    .expect("at least one coloring");
                match lp_max_lazy(&c, &rows, &cheap) {
                    LpOutcome::Optimal { value, x } => {
                        if value != best {
                            let point: serde_json::Map<String, Value> = arcs
                                .iter()
                                .zip(&x)
                                .filter(|(_, v)| !v.is_zero())
                                .map(|(a, v)| (var_key(a), json!(format_rational(v))))
                                .collect();
                            return Ok(Verdict::fail(vec![json!({
                                "probe": probe,
                                "lp_value": format_rational(&value),
                                "integer_value": format_rational(&best),
                                "lp_point": point,
                            })]));
                        }
                    }
                    other => unreachable!("box-bounded LP containing a coloring vector gave {other:?}"),
                }
            }
            Ok(Verdict::pass())
        }
    }
}

/// Matching system of the complement, over the arcs of `ord`.
pub fn edmonds_system(g: &Graph, ord: &VertexOrdering, caps: &Caps) -> Vec<LinearInequality> {
    crate::inequalities::complement_matching_system(g, ord, caps.odd_set)
}

/// Matching system of the path gadget graph mapped onto the arcs, when the
/// complement of `g` has no `K4`, paw or diamond.
pub fn copaw_system(g: &Graph, ord: &VertexOrdering, caps: &Caps) -> Result<Option<Vec<LinearInequality>>> {
    let Some(h) = build_h_g(g, ord)? else {
        return Ok(None);
    };
    Ok(Some(matching_system(&h.graph, caps.odd_set, |a, b| {
        h.edge_to_arc[&(a, b)]
    })))
}

/// Compact model rows, nonnegativity and clique-family inequalities over
/// families of at most `caps.clique_family` maximal cliques of the auxiliary
/// graph. The flag is false when larger families were left out.
pub fn quasiline_system(
    g: &Graph,
    ord: &VertexOrdering,
    caps: &Caps,
) -> Result<(Vec<LinearInequality>, bool)> {
    let model = build_model(g, ord, Variant::Compact, &Problem::Coloring)?;
    let rep = build_rep(g, ord)?;
    let mut rows = model.constraints;
    for a in rep.arcs() {
        rows.push(LinearInequality::new(
            [(*a, Rational::one())],
            Sense::Ge,
            Rational::zero(),
            Family::Nonneg,
        ));
    }
    let all: Vec<usize> = (0..rep.num_arcs()).collect();
    let cliques = maximal_cliques(rep.graph(), &all);
    let exhausted = cliques.len() <= caps.clique_family;
    let mut seen = BTreeSet::new();
    for t in 1..=caps.clique_family.min(cliques.len()) {
        for fam in cliques.iter().cloned().combinations(t) {
            for p in 1..=t {
                let ineq = clique_family_on_rep(&rep, &fam, p)?;
                if ineq.coeffs.is_empty() {
                    continue;
                }
                let key = (ineq.coeffs.clone(), ineq.rhs.clone());
                if seen.insert(key) {
                    rows.push(ineq);
                }
            }
        }
    }
    Ok((rows, exhausted))
}

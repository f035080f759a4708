//! Original and compact representatives models.
//!
//! The original model has a variable `x_uu` per vertex ("`u` represents its
//! own class") and `x_uv` per arc, with
//!
//! ```text
//!     x_uu + sum_{w in N⁻(u)} x_wu = 1                 for every u
//!     sum_{k in K} x_uk <= x_uu                        K ⊆ N⁺(u) a clique
//! ```
//!
//! Eliminating `x_uu` through the equalities gives the compact model on arc
//! variables only. Clique constraints are generated for maximal cliques of
//! `G[N⁺(u)]`: a 0/1 point satisfying them satisfies the constraint for every
//! sub-clique, and the same holds for fractional points since all
//! coefficients are nonnegative.
//!
//! # Precoloring fixings
//!
//! For a consistent ordering, each precolored `v` with `rep(v) ≠ v` gets
//! `x_{rep(v),v} = 1`. In the compact space this alone does not keep two
//! classes apart: with `ρ = {a ↦ 1, b ↦ 2}` and `a ≺ b` nothing stops
//! `x_ab = 1`. In the original space `x_vv = 1` for every class leader `v`
//! rules that out, and its compact translation is `x_wv = 0` for all
//! `w ∈ N⁻(v)`. Likewise `x_{rep(v),v} = 1` together with the equality for
//! `v` implies `x_wv = 0` for the other lower non-neighbors. Both kinds of
//! zero fixings are emitted explicitly so the compact model stands alone.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{maximal_cliques, Graph};
use crate::ordering::{
    consistency_violation, is_weight_nonincreasing, lower_nonneighborhood, rep_of,
    upper_nonneighborhood, Precoloring, VertexOrdering, WeightFunction,
};
use crate::rational::{format_rational, int, Rational};
use crate::rep::arcs_of;

/// Model variable `x_{tail,head}`; `tail == head` is the diagonal variable
/// `x_uu` of the original model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub tail: usize,
    pub head: usize,
}

impl Var {
    pub const fn new(tail: usize, head: usize) -> Self {
        Var { tail, head }
    }

    pub const fn diag(u: usize) -> Self {
        Var { tail: u, head: u }
    }

    pub fn is_diagonal(&self) -> bool {
        self.tail == self.head
    }
}

impl fmt::Display for Var {
    /// LP name with 1-indexed ids, `x_<tail>_<head>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x_{}_{}", self.tail + 1, self.head + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        }
    }

    pub fn parse(s: &str) -> Option<Sense> {
        match s {
            "<=" => Some(Sense::Le),
            "=" | "==" => Some(Sense::Eq),
            ">=" => Some(Sense::Ge),
            _ => None,
        }
    }
}

/// Inequality family tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Representation,
    Clique,
    OddSet,
    Degree,
    Internal,
    CliqueFamily,
    Fixing,
    Nonneg,
    Custom,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Representation => "representation",
            Family::Clique => "clique",
            Family::OddSet => "odd-set",
            Family::Degree => "degree",
            Family::Internal => "internal",
            Family::CliqueFamily => "clique-family",
            Family::Fixing => "fixing",
            Family::Nonneg => "nonneg",
            Family::Custom => "custom",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Family> {
        Some(match tag {
            "representation" => Family::Representation,
            "clique" => Family::Clique,
            "odd-set" => Family::OddSet,
            "degree" => Family::Degree,
            "internal" => Family::Internal,
            "clique-family" => Family::CliqueFamily,
            "fixing" => Family::Fixing,
            "nonneg" => Family::Nonneg,
            "custom" => Family::Custom,
            _ => return None,
        })
    }
}

/// Exact point of the model space, keyed by variable.
pub type PointVector = BTreeMap<Var, Rational>;

/// `sum coeffs[v] * x_v  (sense)  rhs`. Zero coefficients are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearInequality {
    pub coeffs: BTreeMap<Var, Rational>,
    pub sense: Sense,
    pub rhs: Rational,
    pub family: Family,
}

impl LinearInequality {
    pub fn new(
        coeffs: impl IntoIterator<Item = (Var, Rational)>,
        sense: Sense,
        rhs: Rational,
        family: Family,
    ) -> Self {
        let mut map: BTreeMap<Var, Rational> = BTreeMap::new();
        for (v, c) in coeffs {
            *map.entry(v).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        LinearInequality {
            coeffs: map,
            sense,
            rhs,
            family,
        }
    }

    /// `sum_{v in vars} x_v <= rhs`.
    pub fn sum_le(vars: impl IntoIterator<Item = Var>, rhs: Rational, family: Family) -> Self {
        Self::new(vars.into_iter().map(|v| (v, Rational::one())), Sense::Le, rhs, family)
    }

    pub fn support(&self) -> impl Iterator<Item = &Var> {
        self.coeffs.keys()
    }

    pub fn lhs(&self, p: &PointVector) -> Result<Rational> {
        let mut total = Rational::zero();
        for (v, c) in &self.coeffs {
            let x = p
                .get(v)
                .ok_or_else(|| Error::MissingCoordinate(v.to_string()))?;
            total += c * x;
        }
        Ok(total)
    }

    /// Exact left-hand side and whether the inequality holds at `p`.
    pub fn evaluate(&self, p: &PointVector) -> Result<(Rational, bool)> {
        let lhs = self.lhs(p)?;
        let ok = match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Eq => lhs == self.rhs,
            Sense::Ge => lhs >= self.rhs,
        };
        Ok((lhs, ok))
    }

    /// Amount by which `p` violates the inequality (zero or negative when
    /// satisfied).
    pub fn violation(&self, p: &PointVector) -> Result<Rational> {
        let lhs = self.lhs(p)?;
        Ok(match self.sense {
            Sense::Le => lhs - &self.rhs,
            Sense::Ge => &self.rhs - lhs,
            Sense::Eq => {
                let d = lhs - &self.rhs;
                if d < Rational::zero() {
                    -d
                } else {
                    d
                }
            }
        })
    }

    /// Same inequality with every variable renamed through `f`.
    pub fn map_vars(&self, mut f: impl FnMut(&Var) -> Var) -> LinearInequality {
        LinearInequality::new(
            self.coeffs.iter().map(|(v, c)| (f(v), c.clone())),
            self.sense,
            self.rhs.clone(),
            self.family,
        )
    }

    /// Rows of the form `a x <= b` equivalent to this inequality.
    pub fn as_le_rows(&self) -> Vec<(BTreeMap<Var, Rational>, Rational)> {
        let neg = |m: &BTreeMap<Var, Rational>| m.iter().map(|(v, c)| (*v, -c)).collect();
        match self.sense {
            Sense::Le => vec![(self.coeffs.clone(), self.rhs.clone())],
            Sense::Ge => vec![(neg(&self.coeffs), -&self.rhs)],
            Sense::Eq => vec![
                (self.coeffs.clone(), self.rhs.clone()),
                (neg(&self.coeffs), -&self.rhs),
            ],
        }
    }
}

impl fmt::Display for LinearInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, (v, c)) in self.coeffs.iter().enumerate() {
            let sign = if *c < Rational::zero() { "-" } else { "+" };
            let abs = if *c < Rational::zero() { -c } else { c.clone() };
            if i > 0 || sign == "-" {
                write!(f, "{sign} ")?;
            }
            if abs.is_one() {
                write!(f, "{v} ")?;
            } else {
                write!(f, "{} {v} ", format_rational(&abs))?;
            }
        }
        write!(f, "{} {}", self.sense.symbol(), format_rational(&self.rhs))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Original,
    Compact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectiveSense {
    Minimize,
    Maximize,
}

/// `sense  sum coeffs[v] x_v + offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Objective {
    pub sense: ObjectiveSense,
    pub coeffs: BTreeMap<Var, Rational>,
    pub offset: Rational,
}

impl Objective {
    pub fn value(&self, p: &PointVector) -> Result<Rational> {
        let mut total = self.offset.clone();
        for (v, c) in &self.coeffs {
            let x = p
                .get(v)
                .ok_or_else(|| Error::MissingCoordinate(v.to_string()))?;
            total += c * x;
        }
        Ok(total)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Problem {
    Coloring,
    MaxColoring(WeightFunction),
    PrecolorExt(Precoloring),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpec {
    pub variant: Variant,
    /// Diagonal variables first (original variant only), then arcs; each
    /// block sorted.
    pub variables: Vec<Var>,
    pub objective: Objective,
    pub constraints: Vec<LinearInequality>,
    pub fixings: BTreeMap<Var, bool>,
}

impl ModelSpec {
    /// Every constraint and fixing holds at `p`.
    pub fn check_point(&self, p: &PointVector) -> Result<bool> {
        for c in &self.constraints {
            if !c.evaluate(p)?.1 {
                return Ok(false);
            }
        }
        for (v, &val) in &self.fixings {
            let x = p
                .get(v)
                .ok_or_else(|| Error::MissingCoordinate(v.to_string()))?;
            let want = if val { Rational::one() } else { Rational::zero() };
            if *x != want {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Fixings rendered as equality constraints.
    pub fn fixing_rows(&self) -> Vec<LinearInequality> {
        self.fixings
            .iter()
            .map(|(v, &val)| {
                LinearInequality::new(
                    [(*v, Rational::one())],
                    Sense::Eq,
                    if val { Rational::one() } else { Rational::zero() },
                    Family::Fixing,
                )
            })
            .collect()
    }
}

/// Builds the model for `problem` on `(g, ord)`.
///
/// Max-coloring requires an ordering with non-increasing weights, and
/// precoloring extension a proper precoloring with a consistent ordering.
pub fn build_model(
    g: &Graph,
    ord: &VertexOrdering,
    variant: Variant,
    problem: &Problem,
) -> Result<ModelSpec> {
    ord.check_graph(g)?;
    let n = g.n();
    let arcs = arcs_of(g, ord);
    let mut lower = Vec::with_capacity(n);
    let mut upper = Vec::with_capacity(n);
    for u in 0..n {
        lower.push(lower_nonneighborhood(g, ord, u)?);
        upper.push(upper_nonneighborhood(g, ord, u)?);
    }

    let mut constraints = Vec::new();
    match variant {
        Variant::Original => {
            for u in 0..n {
                let terms = std::iter::once(Var::diag(u))
                    .chain(lower[u].iter().map(|&w| Var::new(w, u)))
                    .map(|v| (v, Rational::one()));
                constraints.push(LinearInequality::new(
                    terms,
                    Sense::Eq,
                    Rational::one(),
                    Family::Representation,
                ));
            }
            for u in 0..n {
                if upper[u].is_empty() {
                    constraints.push(LinearInequality::new(
                        [(Var::diag(u), Rational::one())],
                        Sense::Ge,
                        Rational::zero(),
                        Family::Nonneg,
                    ));
                    continue;
                }
                for k in maximal_cliques(g, &upper[u]) {
                    let terms = k
                        .iter()
                        .map(|&v| (Var::new(u, v), Rational::one()))
                        .chain([(Var::diag(u), -Rational::one())]);
                    constraints.push(LinearInequality::new(
                        terms,
                        Sense::Le,
                        Rational::zero(),
                        Family::Clique,
                    ));
                }
            }
        }
        Variant::Compact => {
            for u in 0..n {
                let lower_vars = lower[u].iter().map(|&w| Var::new(w, u));
                let cliques = if upper[u].is_empty() {
                    vec![Vec::new()]
                } else {
                    maximal_cliques(g, &upper[u])
                };
                for k in cliques {
                    let vars = lower_vars
                        .clone()
                        .chain(k.iter().map(|&v| Var::new(u, v)));
                    let row = LinearInequality::sum_le(vars, int(1), Family::Clique);
                    // 0 <= 1 for isolated vertices of the complement
                    if !row.coeffs.is_empty() {
                        constraints.push(row);
                    }
                }
            }
        }
    }

    let mut variables: Vec<Var> = Vec::new();
    if variant == Variant::Original {
        variables.extend((0..n).map(Var::diag));
    }
    variables.extend(arcs.iter().copied());

    let objective = match problem {
        Problem::Coloring | Problem::PrecolorExt(_) => Objective {
            sense: ObjectiveSense::Maximize,
            coeffs: arcs.iter().map(|a| (*a, Rational::one())).collect(),
            offset: -int(n as i64),
        },
        Problem::MaxColoring(w) => {
            w.check_graph(g)?;
            if !is_weight_nonincreasing(ord, w) {
                return Err(Error::InvalidOrdering(
                    "max-coloring needs an ordering with non-increasing weights".into(),
                ));
            }
            Objective {
                sense: ObjectiveSense::Maximize,
                coeffs: arcs
                    .iter()
                    .filter(|a| !w.get(a.head).is_zero())
                    .map(|a| (*a, w.get(a.head).clone()))
                    .collect(),
                offset: -w.total(),
            }
        }
    };

    let fixings = match problem {
        Problem::PrecolorExt(rho) => precoloring_fixings(g, ord, rho, &lower)?,
        _ => BTreeMap::new(),
    };

    Ok(ModelSpec {
        variant,
        variables,
        objective,
        constraints,
        fixings,
    })
}

fn precoloring_fixings(
    g: &Graph,
    ord: &VertexOrdering,
    rho: &Precoloring,
    lower: &[Vec<usize>],
) -> Result<BTreeMap<Var, bool>> {
    rho.check_proper(g)?;
    if let Some((w, c)) = consistency_violation(ord, rho) {
        return Err(Error::InconsistentOrdering {
            unprecolored: w,
            color: c,
        });
    }
    let mut fixings = BTreeMap::new();
    for &v in rho.assignment().keys() {
        let r = rep_of(v, rho, ord)?;
        if r != v {
            assert!(
                !g.has_edge(r, v),
                "proper precoloring puts adjacent vertices in one class"
            );
            fixings.insert(Var::new(r, v), true);
        }
        for &w in &lower[v] {
            if w != r {
                fixings.insert(Var::new(w, v), false);
            }
        }
    }
    Ok(fixings)
}

/// Completes an arc point with `x_uu = 1 - sum_{w in N⁻(u)} x_wu`.
pub fn with_diagonals(g: &Graph, ord: &VertexOrdering, p: &PointVector) -> Result<PointVector> {
    let mut out = p.clone();
    for u in 0..g.n() {
        let mut s = Rational::one();
        for w in lower_nonneighborhood(g, ord, u)? {
            let v = Var::new(w, u);
            s -= p
                .get(&v)
                .ok_or_else(|| Error::MissingCoordinate(v.to_string()))?;
        }
        out.insert(Var::diag(u), s);
    }
    Ok(out)
}

/// 0/1 point with the given arcs set to one and every other arc of `arcs`
/// set to zero.
pub fn indicator_point(arcs: &[Var], ones: &BTreeSet<Var>) -> PointVector {
    arcs.iter()
        .map(|a| {
            let x = if ones.contains(a) {
                Rational::one()
            } else {
                Rational::zero()
            };
            (*a, x)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn p3() -> Graph {
        Graph::path(3)
    }

    #[test]
    fn p3_compact_coloring_model() {
        let m = build_model(&p3(), &VertexOrdering::identity(3), Variant::Compact, &Problem::Coloring)
            .unwrap();
        assert_eq!(m.variables, vec![Var::new(0, 2)]);
        // vertex 0: N⁺ = {2}, K = {2}; vertex 1: N⁺ = ∅, empty sum; vertex 2: lower {0}
        assert_eq!(m.constraints.len(), 2);
        for c in &m.constraints {
            assert_eq!(c.coeffs.len(), 1);
            assert_eq!(c.coeffs[&Var::new(0, 2)], int(1));
            assert_eq!(c.rhs, int(1));
        }
        assert_eq!(m.objective.offset, int(-3));
        assert_eq!(m.objective.coeffs[&Var::new(0, 2)], int(1));
    }

    #[test]
    fn complete_graph_model_is_empty() {
        let m = build_model(
            &Graph::complete(4),
            &VertexOrdering::identity(4),
            Variant::Compact,
            &Problem::Coloring,
        )
        .unwrap();
        assert!(m.variables.is_empty());
        assert_eq!(m.objective.offset, int(-4));
    }

    #[test]
    fn precoloring_fixes_representative_arc() {
        let g = Graph::empty(2);
        let rho = Precoloring::from_pairs(&[(0, 1), (1, 1)]).unwrap();
        let m = build_model(&g, &VertexOrdering::identity(2), Variant::Compact, &Problem::PrecolorExt(rho))
            .unwrap();
        assert_eq!(m.fixings, BTreeMap::from([(Var::new(0, 1), true)]));
    }

    #[test]
    fn distinct_classes_are_kept_apart() {
        let g = Graph::empty(2);
        let rho = Precoloring::from_pairs(&[(0, 1), (1, 2)]).unwrap();
        let m = build_model(&g, &VertexOrdering::identity(2), Variant::Compact, &Problem::PrecolorExt(rho))
            .unwrap();
        assert_eq!(m.fixings, BTreeMap::from([(Var::new(0, 1), false)]));
    }

    #[test]
    fn precoloring_errors() {
        let g = Graph::empty(4);
        let rho = Precoloring::from_pairs(&[(3, 1)]).unwrap();
        let err = build_model(&g, &VertexOrdering::identity(4), Variant::Compact, &Problem::PrecolorExt(rho))
            .unwrap_err();
        assert_eq!(err, Error::InconsistentOrdering { unprecolored: 0, color: 1 });
        let g = Graph::path(2);
        let rho = Precoloring::from_pairs(&[(0, 1), (1, 1)]).unwrap();
        assert!(matches!(
            build_model(&g, &VertexOrdering::identity(2), Variant::Compact, &Problem::PrecolorExt(rho)),
            Err(Error::ImproperPrecoloring(..))
        ));
    }

    #[test]
    fn max_coloring_needs_weight_order() {
        let g = Graph::empty(3);
        let w = WeightFunction::from_integers(&[1, 5, 3]).unwrap();
        let err = build_model(&g, &VertexOrdering::identity(3), Variant::Compact, &Problem::MaxColoring(w.clone()));
        assert!(matches!(err, Err(Error::InvalidOrdering(_))));
        let ord = crate::ordering::ordering_by_weight(&g, &w).unwrap();
        let m = build_model(&g, &ord, Variant::Compact, &Problem::MaxColoring(w)).unwrap();
        assert_eq!(m.objective.offset, int(-9));
        // arcs (1,2) weight 3, (1,0) weight 1, (2,0) weight 1
        assert_eq!(m.objective.coeffs[&Var::new(1, 2)], int(3));
        assert_eq!(m.objective.coeffs[&Var::new(2, 0)], int(1));
    }

    #[test]
    fn evaluate_and_check_point() {
        let m = build_model(&p3(), &VertexOrdering::identity(3), Variant::Compact, &Problem::Coloring)
            .unwrap();
        let zero: PointVector = [(Var::new(0, 2), int(0))].into();
        let c = &m.constraints[0];
        assert_eq!(c.evaluate(&zero).unwrap(), (int(0), true));
        let one: PointVector = [(Var::new(0, 2), int(1))].into();
        assert!(m.check_point(&one).unwrap());
        let half: PointVector = [(Var::new(0, 2), ratio(1, 2))].into();
        assert!(m.check_point(&half).unwrap());
        assert!(matches!(
            m.check_point(&PointVector::new()),
            Err(Error::MissingCoordinate(_))
        ));

        let mut fixed = m.clone();
        fixed.fixings.insert(Var::new(0, 2), true);
        assert!(!fixed.check_point(&zero).unwrap());
    }

    #[test]
    fn original_model_shape() {
        let m = build_model(&p3(), &VertexOrdering::identity(3), Variant::Original, &Problem::Coloring)
            .unwrap();
        assert_eq!(
            m.variables,
            vec![Var::diag(0), Var::diag(1), Var::diag(2), Var::new(0, 2)]
        );
        let eqs = m.constraints.iter().filter(|c| c.sense == Sense::Eq).count();
        assert_eq!(eqs, 3);
        let p: PointVector = [(Var::new(0, 2), int(1))].into();
        let full = with_diagonals(&p3(), &VertexOrdering::identity(3), &p).unwrap();
        assert_eq!(full[&Var::diag(2)], int(0));
        assert!(m.check_point(&full).unwrap());
    }

    #[test]
    fn display_is_readable() {
        let ineq = LinearInequality::new(
            [(Var::new(0, 2), int(1)), (Var::new(1, 2), ratio(-1, 2))],
            Sense::Le,
            int(1),
            Family::Custom,
        );
        assert_eq!(ineq.to_string(), "x_1_3 - 1/2 x_2_3 <= 1");
    }
}

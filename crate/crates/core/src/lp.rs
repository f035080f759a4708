//! CPLEX LP export.
//!
//! The format has no objective constant, so the offset is written in a
//! comment (and reported by [`LpExport::offset`]). Rows with fractional
//! coefficients are multiplied by the LCM of their denominators; the
//! objective scale factor is also recorded in a comment.

use std::fmt::Write;

use num::{One, Signed, Zero};

use crate::formulation::{LinearInequality, ModelSpec, ObjectiveSense, Var, Variant};
use crate::rational::{denominator_lcm, format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpExport {
    pub text: String,
    /// Constant to add to the solver's reported optimum, after dividing it by
    /// `objective_scale`.
    pub offset: Rational,
    pub objective_scale: Rational,
}

fn linear_expr(terms: &[(Var, Rational)]) -> String {
    let mut out = String::new();
    for (i, (v, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push_str("- ");
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            write!(out, "{} ", format_rational(&abs)).unwrap();
        }
        write!(out, "{v}").unwrap();
    }
    out
}

fn scaled_terms(
    coeffs: &std::collections::BTreeMap<Var, Rational>,
    extra: Option<&Rational>,
) -> (Vec<(Var, Rational)>, Rational) {
    let lcm = Rational::from_integer(denominator_lcm(coeffs.values().chain(extra)));
    (
        coeffs.iter().map(|(v, c)| (*v, c * &lcm)).collect(),
        lcm,
    )
}

fn row_name(prefix: &str, idx: usize) -> String {
    format!("{}_{}", prefix.replace('-', "_"), idx + 1)
}

fn write_row(out: &mut String, name: &str, row: &LinearInequality) {
    let (terms, lcm) = scaled_terms(&row.coeffs, Some(&row.rhs));
    let rhs = &row.rhs * &lcm;
    let expr = if terms.is_empty() {
        "0 x_dummy".to_string()
    } else {
        linear_expr(&terms)
    };
    writeln!(
        out,
        " {name}: {expr} {} {}",
        row.sense.symbol(),
        format_rational(&rhs)
    )
    .unwrap();
}

/// Deterministic LP text for `m`.
pub fn export_lp(m: &ModelSpec) -> LpExport {
    let mut out = String::new();
    let variant = match m.variant {
        Variant::Original => "original",
        Variant::Compact => "compact",
    };
    let (obj_terms, scale) = scaled_terms(&m.objective.coeffs, None);
    writeln!(out, "\\ representatives model, {variant} variant").unwrap();
    writeln!(
        out,
        "\\ objective offset: {}",
        format_rational(&m.objective.offset)
    )
    .unwrap();
    writeln!(out, "\\ objective scale: {}", format_rational(&scale)).unwrap();
    writeln!(
        out,
        "\\ true objective = (reported optimum) / scale + offset"
    )
    .unwrap();
    let sense = match m.objective.sense {
        ObjectiveSense::Maximize => "Maximize",
        ObjectiveSense::Minimize => "Minimize",
    };
    writeln!(out, "{sense}").unwrap();
    if obj_terms.is_empty() {
        writeln!(out, " obj:").unwrap();
    } else {
        writeln!(out, " obj: {}", linear_expr(&obj_terms)).unwrap();
    }
    writeln!(out, "Subject To").unwrap();
    let mut counters = std::collections::BTreeMap::new();
    for row in &m.constraints {
        let k = counters.entry(row.family.tag()).or_insert(0usize);
        write_row(&mut out, &row_name(row.family.tag(), *k), row);
        *k += 1;
    }
    writeln!(out, "Bounds").unwrap();
    for (v, &val) in &m.fixings {
        writeln!(out, " {v} = {}", u8::from(val)).unwrap();
    }
    let mut vars = m.variables.clone();
    vars.sort();
    if vars.is_empty() {
        writeln!(out, "Binary").unwrap();
    } else {
        for (i, chunk) in vars.chunks(8).enumerate() {
            let names: Vec<String> = chunk.iter().map(Var::to_string).collect();
            if i == 0 {
                writeln!(out, "Binary {}", names.join(" ")).unwrap();
            } else {
                writeln!(out, " {}", names.join(" ")).unwrap();
            }
        }
    }
    writeln!(out, "End").unwrap();
    LpExport {
        text: out,
        offset: m.objective.offset.clone(),
        objective_scale: if scale.is_zero() { Rational::one() } else { scale },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulation::{build_model, Family, Objective, Problem, Sense};
    use crate::graph::Graph;
    use crate::ordering::{ordering_by_weight, VertexOrdering, WeightFunction};
    use crate::rational::{int, ratio};

    #[test]
    fn p3_export() {
        let m = build_model(
            &Graph::path(3),
            &VertexOrdering::identity(3),
            Variant::Compact,
            &Problem::Coloring,
        )
        .unwrap();
        let lp = export_lp(&m);
        assert_eq!(lp.text.matches("x_1_3 <= 1").count(), 2);
        assert!(lp.text.contains("Binary x_1_3"));
        assert!(lp.text.contains("\\ objective offset: -3"));
        assert_eq!(lp.offset, int(-3));
        assert_eq!(export_lp(&m), lp);
    }

    #[test]
    fn empty_model_export() {
        let m = ModelSpec {
            variant: Variant::Compact,
            variables: vec![],
            objective: Objective {
                sense: ObjectiveSense::Maximize,
                coeffs: Default::default(),
                offset: int(0),
            },
            constraints: vec![],
            fixings: Default::default(),
        };
        let text = export_lp(&m).text;
        for section in ["Maximize", "Subject To", "Bounds", "Binary", "End"] {
            assert!(text.contains(section), "{section} missing");
        }
    }

    #[test]
    fn fractional_rows_are_scaled() {
        let mut m = build_model(
            &Graph::empty(2),
            &VertexOrdering::identity(2),
            Variant::Compact,
            &Problem::Coloring,
        )
        .unwrap();
        m.constraints.push(LinearInequality::new(
            [(Var::new(0, 1), ratio(1, 2))],
            Sense::Le,
            ratio(1, 3),
            Family::Custom,
        ));
        let text = export_lp(&m).text;
        assert!(text.contains(" custom_1: 3 x_1_2 <= 2"), "{text}");
    }

    #[test]
    fn weighted_objective_scale() {
        let g = Graph::empty(2);
        let w = WeightFunction::new(vec![ratio(3, 2), ratio(1, 3)]).unwrap();
        let ord = ordering_by_weight(&g, &w).unwrap();
        let m = build_model(&g, &ord, Variant::Compact, &Problem::MaxColoring(w)).unwrap();
        let lp = export_lp(&m);
        assert_eq!(lp.objective_scale, int(3));
        assert!(lp.text.contains(" obj: x_1_2"));
        assert_eq!(lp.offset, ratio(-11, 6));
    }

    #[test]
    fn fixings_go_to_bounds() {
        let g = Graph::empty(2);
        let rho = crate::ordering::Precoloring::from_pairs(&[(0, 1), (1, 1)]).unwrap();
        let m = build_model(&g, &VertexOrdering::identity(2), Variant::Compact, &Problem::PrecolorExt(rho))
            .unwrap();
        assert!(export_lp(&m).text.contains("Bounds\n x_1_2 = 1\n"));
    }
}

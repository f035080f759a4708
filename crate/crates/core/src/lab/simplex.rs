//! Exact two-phase simplex on a dense rational tableau with Bland's rule.
//!
//! Solves `max c x` subject to `A x <= b`, `x >= 0`. Bland's rule rules
//! out cycling, so the method terminates on degenerate problems, which are
//! the norm for 0/1 polytopes.

use num::{Signed, Zero};

use crate::rational::Rational;

/// `coeffs · x <= rhs` over dense coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpRow {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    t: Vec<Vec<Rational>>,
    /// Reduced costs, with the negated objective value in the last slot.
    d: Vec<Rational>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.t[r][j].clone();
        for x in self.t[r].iter_mut() {
            if !x.is_zero() {
                *x /= &p;
            }
        }
        let row = self.t[r].clone();
        let nz: Vec<usize> = (0..=self.cols).filter(|&k| !row[k].is_zero()).collect();
        for (i, other) in self.t.iter_mut().enumerate() {
            if i == r || other[j].is_zero() {
                continue;
            }
            let f = other[j].clone();
            for &k in &nz {
                other[k] -= &f * &row[k];
            }
        }
        if !self.d[j].is_zero() {
            let f = self.d[j].clone();
            for &k in &nz {
                self.d[k] -= &f * &row[k];
            }
        }
        self.basis[r] = j;
    }

    fn set_objective(&mut self, c: &[Rational]) {
        let mut d: Vec<Rational> = (0..=self.cols)
            .map(|k| c.get(k).cloned().unwrap_or_else(Rational::zero))
            .collect();
        d[self.cols] = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = c.get(b).cloned().unwrap_or_else(Rational::zero);
            if cb.is_zero() {
                continue;
            }
            for (k, x) in self.t[i].iter().enumerate() {
                if !x.is_zero() {
                    d[k] -= &cb * x;
                }
            }
        }
        self.d = d;
    }

    /// Runs primal simplex over columns `< allowed`. Returns false when
    /// unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(j) = (0..allowed).find(|&k| self.d[k].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.t.iter().enumerate() {
                if !row[j].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[j];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((i, _)) => self.pivot(i, j),
            }
        }
    }
}

/// Maximizes `c · x` over `{x >= 0 : rows}`.
pub fn maximize(c: &[Rational], rows: &[LpRow]) -> LpOutcome {
    let n = c.len();
    let m = rows.len();
    let negative: Vec<usize> = (0..m).filter(|&i| rows[i].rhs.is_negative()).collect();
    let cols = n + m + negative.len();
    let mut t = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut art = 0;
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.coeffs.len(), n, "row width");
        let mut r = vec![Rational::zero(); cols + 1];
        let flip = row.rhs.is_negative();
        for (k, a) in row.coeffs.iter().enumerate() {
            r[k] = if flip { -a } else { a.clone() };
        }
        r[n + i] = if flip { -Rational::from_integer(1.into()) } else { Rational::from_integer(1.into()) };
        r[cols] = if flip { -&row.rhs } else { row.rhs.clone() };
        if flip {
            r[n + m + art] = Rational::from_integer(1.into());
            basis.push(n + m + art);
            art += 1;
        } else {
            basis.push(n + i);
        }
        t.push(r);
    }
    let mut tab = Tableau {
        t,
        d: Vec::new(),
        basis,
        cols,
    };

    if art > 0 {
        let mut phase1 = vec![Rational::zero(); cols];
        for x in phase1.iter_mut().skip(n + m) {
            *x = -Rational::from_integer(1.into());
        }
        tab.set_objective(&phase1);
        let bounded = tab.optimize(cols);
        debug_assert!(bounded, "phase one is bounded by zero");
        if !tab.d[cols].is_zero() {
            return LpOutcome::Infeasible;
        }
        // drive remaining artificials out of the basis
        let mut i = 0;
        while i < tab.t.len() {
            if tab.basis[i] >= n + m {
                match (0..n + m).find(|&k| !tab.t[i][k].is_zero()) {
                    Some(k) => tab.pivot(i, k),
                    None => {
                        tab.t.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    tab.set_objective(c);
    if !tab.optimize(n + m) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            x[b] = tab.t[i][cols].clone();
        }
    }
    LpOutcome::Optimal {
        value: -tab.d[cols].clone(),
        x,
    }
}

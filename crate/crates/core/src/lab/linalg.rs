//! Exact rank computations.

use std::collections::BTreeSet;

use num::Zero;

use crate::error::{Error, Result};
use crate::formulation::{PointVector, Var};
use crate::rational::Rational;

/// Row echelon basis grown one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    /// `(pivot column, row)`, each row normalized to a unit pivot.
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        for (col, row) in &self.rows {
            if !v[*col].is_zero() {
                let f = v[*col].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        let Some(col) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let p = v[col].clone();
        for x in v.iter_mut() {
            *x /= &p;
        }
        // keep earlier rows reduced against the new pivot
        for (_, row) in self.rows.iter_mut() {
            if !row[col].is_zero() {
                let f = row[col].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        self.rows.push((col, v));
        true
    }
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r.clone());
    }
    e.rank()
}

/// Dimension of the affine hull of `points` (all over the same variables).
pub fn affine_dimension(points: &[PointVector]) -> Result<usize> {
    let first = points
        .first()
        .ok_or_else(|| Error::Precondition("affine dimension of an empty set".into()))?;
    let keys: BTreeSet<Var> = points.iter().flat_map(|p| p.keys().copied()).collect();
    let coords = |p: &PointVector| -> Result<Vec<Rational>> {
        keys.iter()
            .map(|k| {
                p.get(k)
                    .cloned()
                    .ok_or_else(|| Error::MissingCoordinate(k.to_string()))
            })
            .collect()
    };
    let base = coords(first)?;
    let mut e = Echelon::new();
    for p in &points[1..] {
        let diff: Vec<Rational> = coords(p)?.into_iter().zip(&base).map(|(a, b)| a - b).collect();
        e.insert(diff);
        if e.rank() == keys.len() {
            break;
        }
    }
    Ok(e.rank())
}

/// Affine dimension of 0/1 points given as bitmasks over `d` coordinates.
pub fn affine_dimension_masks(masks: &[u64], d: usize) -> Result<usize> {
    let first = *masks
        .first()
        .ok_or_else(|| Error::Precondition("affine dimension of an empty set".into()))?;
    let mut e = Echelon::new();
    for &m in &masks[1..] {
        let diff: Vec<Rational> = (0..d)
            .map(|i| Rational::from_integer(((m >> i & 1) as i64 - (first >> i & 1) as i64).into()))
            .collect();
        e.insert(diff);
        if e.rank() == d {
            break;
        }
    }
    Ok(e.rank())
}

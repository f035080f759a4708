//! Vertex enumeration of bounded polyhedra by the double description method.
//!
//! The polytope `{x : A x <= b, x >= 0}` is homogenized to the cone
//! `{(x0, x) : b x0 - A x >= 0, x0 >= 0, x >= 0}`, which starts out as the
//! nonnegative orthant with extreme rays `e_0, ..., e_d`. Halfspaces are then
//! added one at a time. Rays are integer vectors reduced by their gcd;
//! adjacency uses the combinatorial test (no third ray is tight on every
//! constraint tight at both). Vertices are the rays with `x0 > 0`.

use num::{BigInt, Integer, Signed, Zero};

use crate::error::{Error, Result};
use crate::lab::simplex::LpRow;
use crate::rational::{denominator_lcm, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64).max(1)])
    }

    fn set(&mut self, i: usize) {
        if i / 64 >= self.0.len() {
            self.0.resize(i / 64 + 1, 0);
        }
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn subset_of(&self, other: &Bits) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, a)| a & !other.0.get(i).copied().unwrap_or(0) == 0)
    }
}

#[derive(Clone, Debug)]
struct Ray {
    v: Vec<BigInt>,
    tight: Bits,
}

fn normalize(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Vertices of `{x >= 0 : rows}`, which must be bounded. Fails with
/// [`Error::Precondition`] when the region is unbounded.
pub fn polytope_vertices(d: usize, rows: &[LpRow]) -> Result<Vec<Vec<Rational>>> {
    // cone rows h with h · (x0, x) >= 0; the first d + 1 are the orthant
    let mut cone_rows: Vec<Vec<BigInt>> = Vec::with_capacity(rows.len());
    for r in rows {
        if r.coeffs.len() != d {
            return Err(Error::Precondition("row width differs from dimension".into()));
        }
        let lcm = Rational::from_integer(denominator_lcm(r.coeffs.iter().chain([&r.rhs])));
        let mut h = Vec::with_capacity(d + 1);
        h.push((&r.rhs * &lcm).to_integer());
        h.extend(r.coeffs.iter().map(|a| -(a * &lcm).to_integer()));
        cone_rows.push(normalize(h));
    }
    let total = d + 1 + cone_rows.len();

    let mut rays: Vec<Ray> = (0..=d)
        .map(|i| {
            let mut v = vec![BigInt::zero(); d + 1];
            v[i] = BigInt::from(1);
            let mut tight = Bits::new(total);
            for k in (0..=d).filter(|&k| k != i) {
                tight.set(k);
            }
            Ray { v, tight }
        })
        .collect();

    for (idx, h) in cone_rows.iter().enumerate() {
        let id = d + 1 + idx;
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(h, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    r.tight.set(id);
                }
            }
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].tight.and(&rays[q].tight);
                let adjacent = !rays
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != p && k != q && common.subset_of(&r.tight));
                if !adjacent {
                    continue;
                }
                let a = &vals[p];
                let b = -&vals[q];
                let v: Vec<BigInt> = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(x, y)| a * x + &b * y)
                    .collect();
                let mut tight = common;
                tight.set(id);
                next.push(Ray {
                    v: normalize(v),
                    tight,
                });
            }
        }
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                r.tight.set(id);
            }
            next.push(r);
        }
        rays = next;
    }

    let mut out = Vec::new();
    for r in rays {
        if r.v[0].is_zero() {
            if r.v.iter().any(|x| !x.is_zero()) {
                return Err(Error::Precondition("polyhedron is unbounded".into()));
            }
            continue;
        }
        let x0 = r.v[0].clone();
        out.push(
            r.v[1..]
                .iter()
                .map(|x| Rational::new(x.clone(), x0.clone()))
                .collect(),
        );
    }
    out.sort();
    out.dedup();
    Ok(out)
}

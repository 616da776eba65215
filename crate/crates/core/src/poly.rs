//! Sparse multivariate polynomials over the rationals.
//!
//! Only what the symbolic rank computation needs: ring operations,
//! evaluation, and determinants of small polynomial matrices.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Map from exponent vectors to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, Rational::one());
        p
    }

    /// `c + sum_i coeffs[i] x_i`.
    pub fn affine(c: Rational, coeffs: &[Rational]) -> Self {
        let nvars = coeffs.len();
        let mut p = Self::constant(nvars, c);
        for (i, a) in coeffs.iter().enumerate() {
            if !a.is_zero() {
                let mut e = vec![0; nvars];
                e[i] = 1;
                p.terms.insert(e, a.clone());
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.nvars);
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let mono = e
                .iter()
                .zip(x)
                .filter(|(k, _)| **k > 0)
                .fold(Rational::one(), |m, (&k, v)| m * num_traits::pow(v.clone(), k as usize));
            acc + c * mono
        })
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{p}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// Determinant of the square submatrix of `entries` picked by `rows` and
/// `cols`, by Laplace expansion along rows with memoised column subsets.
pub fn minor_determinant(entries: &[Vec<Poly>], rows: &[usize], cols: &[usize], nvars: usize) -> Poly {
    assert_eq!(rows.len(), cols.len());
    assert!(cols.len() < 64);
    fn rec(
        entries: &[Vec<Poly>],
        rows: &[usize],
        cols: &[usize],
        depth: usize,
        mask: u64,
        nvars: usize,
        memo: &mut HashMap<u64, Poly>,
    ) -> Poly {
        if depth == rows.len() {
            return Poly::constant(nvars, Rational::one());
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let mut acc = Poly::zero(nvars);
        let mut sign_positive = true;
        for (ci, &c) in cols.iter().enumerate() {
            if mask >> ci & 1 == 1 {
                continue;
            }
            let e = &entries[rows[depth]][c];
            if !e.is_zero() {
                let sub = rec(entries, rows, cols, depth + 1, mask | 1 << ci, nvars, memo);
                if !sub.is_zero() {
                    let term = e * &sub;
                    acc = if sign_positive { &acc + &term } else { &acc - &term };
                }
            }
            sign_positive = !sign_positive;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    let mut memo = HashMap::new();
    rec(entries, rows, cols, 0, 0, nvars, &mut memo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn ring_ops() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = &x + &y;
        let d = &x - &y;
        let p = &s * &d;
        // (x+y)(x-y) = x^2 - y^2
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.degree(), 2);
        assert_eq!(p.eval(&[int(3), int(2)]), int(5));
        assert!((&p - &p).is_zero());
        assert_eq!(&(-&x) + &x, Poly::zero(2));
    }

    #[test]
    fn determinant_of_affine_matrix() {
        // [[x, 1], [1, x]] has determinant x^2 - 1.
        let one = Poly::constant(1, int(1));
        let x = Poly::var(1, 0);
        let m = vec![vec![x.clone(), one.clone()], vec![one, x]];
        let det = minor_determinant(&m, &[0, 1], &[0, 1], 1);
        assert_eq!(det.eval(&[int(1)]), int(0));
        assert_eq!(det.eval(&[int(3)]), int(8));
        assert_eq!(det.degree(), 2);
        let sub = minor_determinant(&m, &[1], &[0], 1);
        assert_eq!(sub, Poly::constant(1, int(1)));
    }

    #[test]
    fn permutation_signs() {
        // Determinant of a constant 3x3 matrix against the exact rational one.
        let vals = [[2, -1, 0], [1, 3, 4], [0, 5, -2]];
        let m: Vec<Vec<Poly>> = vals
            .iter()
            .map(|r| r.iter().map(|&v| Poly::constant(0, int(v))).collect())
            .collect();
        let det = minor_determinant(&m, &[0, 1, 2], &[0, 1, 2], 0);
        let q = crate::rational::MatQ::from_ints(&[&vals[0], &vals[1], &vals[2]]);
        assert_eq!(det, Poly::constant(0, crate::linalg::determinant(&q)));
    }
}

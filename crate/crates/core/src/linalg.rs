//! Exact linear algebra over the rationals.
//!
//! Rank uses fraction-free (Bareiss) elimination on an integer scaling of the
//! matrix. Kernels, inverses and span membership go through reduced row
//! echelon form over `Rational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::{MatQ, Rational, VectorQ};

/// Scales each row by the lcm of its denominators to get an integer matrix
/// with the same rank.
fn integer_rows(m: &MatQ) -> Vec<Vec<BigInt>> {
    (0..m.nrows())
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
        })
        .collect()
}

/// Exact rank by fraction-free Gaussian elimination.
pub fn rank_exact(m: &MatQ) -> usize {
    let mut a = integer_rows(m);
    let rows = m.nrows();
    let cols = m.ncols();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                // Bareiss step: the division is exact.
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Reduced row echelon form. Returns the reduced matrix and pivot columns.
pub fn rref(m: &MatQ) -> (MatQ, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.nrows();
    let cols = a.ncols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = tmp;
            }
        }
        let inv = Rational::one() / &a[(r, c)];
        for j in c..cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone();
            for j in c..cols {
                let delta = &factor * &a[(r, j)];
                a[(i, j)] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of the right kernel `{v : m v = 0}`, one vector per free column.
pub fn nullspace(m: &MatQ) -> Vec<VectorQ> {
    let cols = m.ncols();
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = VectorQ::zeros(cols);
            v[fc] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(row, fc)].clone();
            }
            v
        })
        .collect()
}

/// Basis of the left kernel `{a : a^T m = 0}`.
pub fn left_nullspace(m: &MatQ) -> Vec<VectorQ> {
    nullspace(&m.transpose())
}

/// Echelon basis of the row space.
pub fn row_space_basis(rows: &[VectorQ], dim: usize) -> Vec<VectorQ> {
    if rows.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = rref(&MatQ::from_rows(rows, dim));
    (0..pivots.len()).map(|i| r.row(i)).collect()
}

/// Coefficients `a` with `sum_i a_i rows[i] = v`, if `v` lies in the span.
/// When the rows are dependent any solution may be returned.
pub fn solve_in_span(rows: &[VectorQ], v: &VectorQ) -> Option<VectorQ> {
    let k = rows.len();
    let n = v.len();
    if k == 0 {
        return v.is_zero().then(|| VectorQ(Vec::new()));
    }
    // Columns are the rows; augmented with v.
    let mut aug = MatQ::zeros(n, k + 1);
    for (j, r) in rows.iter().enumerate() {
        for i in 0..n {
            aug[(i, j)] = r[i].clone();
        }
    }
    for i in 0..n {
        aug[(i, k)] = v[i].clone();
    }
    let (red, pivots) = rref(&aug);
    if pivots.contains(&k) {
        return None;
    }
    let mut a = VectorQ::zeros(k);
    for (row, &pc) in pivots.iter().enumerate() {
        a[pc] = red[(row, k)].clone();
    }
    Some(a)
}

pub fn in_span(rows: &[VectorQ], v: &VectorQ) -> bool {
    solve_in_span(rows, v).is_some()
}

/// Exact inverse of a square matrix, `None` if singular.
pub fn inverse(m: &MatQ) -> Option<MatQ> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "inverse of a non-square matrix");
    let mut aug = MatQ::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n + i)] = Rational::one();
    }
    let (red, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut inv = MatQ::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = red[(i, n + j)].clone();
        }
    }
    Some(inv)
}

/// Exact determinant by elimination.
pub fn determinant(m: &MatQ) -> Rational {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "determinant of a non-square matrix");
    let mut a = m.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            for j in 0..n {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(c, j)].clone();
                a[(c, j)] = tmp;
            }
            det = -det;
        }
        let piv = a[(c, c)].clone();
        det *= &piv;
        for i in c + 1..n {
            if a[(i, c)].is_zero() {
                continue;
            }
            let factor = &a[(i, c)] / &piv;
            for j in c..n {
                let delta = &factor * &a[(c, j)];
                a[(i, j)] -= delta;
            }
        }
    }
    det
}

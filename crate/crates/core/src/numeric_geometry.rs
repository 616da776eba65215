//! Floating point geometry of the coadjoint action.
//!
//! Group elements are coordinates of the second kind,
//! `s = exp(t_1 Z_1) ... exp(t_n Z_n)`, and only `Ad(s)` is ever formed.
//! The map `(s, l) -> s.l` is read through the chart `(t, x)` of
//! `G x A_tau` and the adapted dual chart of the target; its Jacobian at
//! `t = 0` has the block form `[[M(l), 0], [*, I]]`.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::lie_core::LieAlgebra;
use crate::monomial::{MonomialDatum, MonomialError};
use crate::orbit_rank::moment_matrix;
use crate::rational::{to_f64, Rational};

pub const DEFAULT_STEP: f64 = 1e-4;
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Chart(#[from] MonomialError),
}

/// Coordinates `t` of `exp(t_1 Z_1) ... exp(t_n Z_n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupCoordinates(pub Vec<f64>);

impl GroupCoordinates {
    pub fn identity(n: usize) -> Self {
        GroupCoordinates(vec![0.0; n])
    }
}

/// Float matrix of `ad z` (column `j` is `[z, Z_j]`).
pub fn ad_matrix_f64(alg: &LieAlgebra, z: &[f64]) -> DMatrix<f64> {
    let n = alg.dim();
    assert_eq!(z.len(), n, "element has wrong dimension");
    let mut m = DMatrix::zeros(n, n);
    for (i, &zi) in z.iter().enumerate() {
        if zi == 0.0 {
            continue;
        }
        for j in 0..n {
            for k in 0..n {
                let c = alg.constant(i, j, k);
                if !num_traits::Zero::is_zero(c) {
                    m[(k, j)] += zi * to_f64(c);
                }
            }
        }
    }
    m
}

fn norm1(a: &DMatrix<f64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Taylor sum when `a` is nilpotent to roundoff, `None` otherwise.
fn nilpotent_series(a: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let n = a.nrows();
    let scale = norm1(a).max(1.0);
    let mut sum = DMatrix::identity(n, n);
    let mut term = DMatrix::identity(n, n);
    for k in 1..=n {
        term = &term * a / k as f64;
        if norm1(&term) <= 1e-15 * scale.powi(k as i32) {
            return Some(sum);
        }
        sum += &term;
    }
    None
}

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// Matrix exponential: exact truncated series for nilpotent input, otherwise
/// scaling and squaring around a degree 13 Pade approximant.
pub fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm needs a square matrix");
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    if let Some(s) = nilpotent_series(a) {
        return s;
    }
    let norm = norm1(a);
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let a = a / 2f64.powi(squarings);
    let b = &PADE13;
    let ident = DMatrix::<f64>::identity(n, n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let u_inner = &a6 * (&a6 * b[13] + &a4 * b[11] + &a2 * b[9]) + &a6 * b[7] + &a4 * b[5] + &a2 * b[3] + &ident * b[1];
    let u = &a * u_inner;
    let v = &a6 * (&a6 * b[12] + &a4 * b[10] + &a2 * b[8]) + &a6 * b[6] + &a4 * b[4] + &a2 * b[2] + &ident * b[0];
    let p = &v + &u;
    let q = &v - &u;
    let mut r = q.lu().solve(&p).expect("Pade denominator is nonsingular");
    for _ in 0..squarings {
        r = &r * &r;
    }
    r
}

/// `exp(t ad z)`.
pub fn ad_exp(alg: &LieAlgebra, z: &[f64], t: f64) -> DMatrix<f64> {
    expm(&(ad_matrix_f64(alg, z) * t))
}

/// `Ad(s)` for `s = exp(t_1 g_1) ... exp(t_k g_k)`.
pub fn adjoint_of(alg: &LieAlgebra, generators: &[Vec<f64>], t: &[f64]) -> DMatrix<f64> {
    assert_eq!(generators.len(), t.len());
    let n = alg.dim();
    generators.iter().zip(t).fold(DMatrix::identity(n, n), |acc, (g, &tk)| {
        if tk == 0.0 {
            acc
        } else {
            acc * ad_exp(alg, g, tk)
        }
    })
}

/// `Ad(s^{-1})`: inverse factors in reverse order.
pub fn adjoint_of_inverse(alg: &LieAlgebra, generators: &[Vec<f64>], t: &[f64]) -> DMatrix<f64> {
    assert_eq!(generators.len(), t.len());
    let n = alg.dim();
    generators
        .iter()
        .zip(t)
        .rev()
        .fold(DMatrix::identity(n, n), |acc, (g, &tk)| {
            if tk == 0.0 {
                acc
            } else {
                acc * ad_exp(alg, g, -tk)
            }
        })
}

fn row_times(l: &[f64], a: &DMatrix<f64>) -> Vec<f64> {
    (0..a.ncols())
        .map(|j| l.iter().enumerate().map(|(i, li)| li * a[(i, j)]).sum())
        .collect()
}

fn standard_generators(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

/// `s.l = l o Ad(s^{-1})` with `s` built from the given generators.
pub fn coadjoint_apply_with(alg: &LieAlgebra, generators: &[Vec<f64>], t: &[f64], l: &[f64]) -> Vec<f64> {
    row_times(l, &adjoint_of_inverse(alg, generators, t))
}

/// `s.l` for `s` in coordinates of the second kind on the algebra basis.
pub fn coadjoint_apply(alg: &LieAlgebra, s: &GroupCoordinates, l: &[f64]) -> Vec<f64> {
    coadjoint_apply_with(alg, &standard_generators(alg.dim()), &s.0, l)
}

/// `s^{-1}.l = l o Ad(s)`.
pub fn coadjoint_apply_inverse(alg: &LieAlgebra, s: &GroupCoordinates, l: &[f64]) -> Vec<f64> {
    row_times(l, &adjoint_of(alg, &standard_generators(alg.dim()), &s.0))
}

fn adapted_generators(d: &MonomialDatum) -> Vec<Vec<f64>> {
    (0..d.n()).map(|r| d.adapted_vector(r).to_f64()).collect()
}

/// Adapted dual coordinates of `s.l` where `s = exp(t_1 B_1) ... exp(t_n B_n)`
/// over the adapted basis and `l` is the chart point `x`.
pub fn phi_in_chart(d: &MonomialDatum, t: &[f64], x: &[f64]) -> Result<Vec<f64>, NumericError> {
    if t.len() != d.n() {
        return Err(NumericError::DimensionMismatch {
            expected: d.n(),
            found: t.len(),
        });
    }
    let l = d.point_on_variety_f64(x)?;
    let moved = coadjoint_apply_with(d.algebra(), &adapted_generators(d), t, &l);
    let p = d.adapted_basis().to_f64();
    Ok((0..d.n())
        .map(|r| (0..d.n()).map(|k| p[(r, k)] * moved[k]).sum())
        .collect())
}

/// Number of singular values above `rel_tol` times the largest one.
pub fn numerical_rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().copied().fold(0.0, f64::max);
    if max <= f64::EPSILON {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * max).count()
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobianReport {
    /// `n x (2n - m)`: columns `t_1..t_n` then `x_1..x_{n-m}`.
    pub j: DMatrix<f64>,
    pub max_dev_topleft: f64,
    pub max_dev_topright: f64,
    pub max_dev_bottomright: f64,
    pub numerical_rank_j: usize,
    pub rank_m: usize,
    /// `rank M(l) + n - m`.
    pub expected_rank: usize,
}

impl JacobianReport {
    /// Bottom-left `(n-m) x n` block; not constrained by the block form.
    pub fn bottom_left(&self, m: usize) -> DMatrix<f64> {
        let n = self.j.nrows();
        self.j.view((m, 0), (n - m, n)).into_owned()
    }
}

/// Central-difference Jacobian of `phi_in_chart` at `(0, x)` compared against
/// the analytic blocks.
pub fn fd_jacobian(d: &MonomialDatum, x: &[Rational], h: f64, rank_tol: f64) -> Result<JacobianReport, NumericError> {
    assert!(h > 0.0, "step must be positive");
    let n = d.n();
    let m = d.m();
    let k = d.chart_dim();
    let l = d.point_on_variety(x)?;
    let mm = moment_matrix(d, &l).expect("length matches").0;
    let xf: Vec<f64> = x.iter().map(to_f64).collect();
    let mut j = DMatrix::zeros(n, n + k);
    let zero_t = vec![0.0; n];
    for c in 0..n {
        let mut tp = zero_t.clone();
        let mut tm = zero_t.clone();
        tp[c] = h;
        tm[c] = -h;
        let fp = phi_in_chart(d, &tp, &xf)?;
        let fm = phi_in_chart(d, &tm, &xf)?;
        for r in 0..n {
            j[(r, c)] = (fp[r] - fm[r]) / (2.0 * h);
        }
    }
    for c in 0..k {
        let mut xp = xf.clone();
        let mut xm = xf.clone();
        xp[c] += h;
        xm[c] -= h;
        let fp = phi_in_chart(d, &zero_t, &xp)?;
        let fm = phi_in_chart(d, &zero_t, &xm)?;
        for r in 0..n {
            j[(r, n + c)] = (fp[r] - fm[r]) / (2.0 * h);
        }
    }
    let mut top_left = 0.0f64;
    let mut top_right = 0.0f64;
    let mut bottom_right = 0.0f64;
    for r in 0..m {
        for c in 0..n {
            top_left = top_left.max((j[(r, c)] - to_f64(&mm[(r, c)])).abs());
        }
        for c in 0..k {
            top_right = top_right.max(j[(r, n + c)].abs());
        }
    }
    for r in 0..k {
        for c in 0..k {
            let target = if r == c { 1.0 } else { 0.0 };
            bottom_right = bottom_right.max((j[(m + r, n + c)] - target).abs());
        }
    }
    let rank_m = crate::linalg::rank_exact(&mm);
    Ok(JacobianReport {
        numerical_rank_j: numerical_rank(&j, rank_tol),
        j,
        max_dev_topleft: top_left,
        max_dev_topright: top_right,
        max_dev_bottomright: bottom_right,
        rank_m,
        expected_rank: rank_m + n - m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, VectorQ};

    fn heisenberg() -> LieAlgebra {
        let mut l = LieAlgebra::abelian("h3", &["X", "Y", "Z"]).unwrap();
        l.set_bracket(0, 1, &VectorQ::from_ints(&[0, 0, 1]));
        l
    }

    fn ax_b() -> LieAlgebra {
        let mut l = LieAlgebra::abelian("ax+b", &["A", "X"]).unwrap();
        l.set_bracket(0, 1, &VectorQ::from_ints(&[0, 1]));
        l
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn ad_exp_unipotent() {
        let h = heisenberg();
        let e = ad_exp(&h, &[1.0, 0.0, 0.0], 2.0);
        // Y column -> Y + 2Z
        assert_eq!(e.column(1).iter().copied().collect::<Vec<_>>(), vec![0.0, 1.0, 2.0]);
        assert_eq!(ad_exp(&h, &[0.3, -1.0, 2.0], 0.0), DMatrix::identity(3, 3));
    }

    #[test]
    fn ad_exp_diagonal() {
        let a = ax_b();
        let e = ad_exp(&a, &[1.0, 0.0], 1.0);
        assert!(close(e[(1, 1)], std::f64::consts::E, 1e-14));
        assert!(close(e[(0, 0)], 1.0, 1e-15));
        let big = ad_exp(&a, &[1.0, 0.0], 20.0);
        assert!(close(big[(1, 1)] / 20f64.exp(), 1.0, 1e-13));
    }

    #[test]
    fn expm_rotation() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]) * 7.0;
        let e = expm(&a);
        assert!(close(e[(0, 0)], 7f64.cos(), 1e-13));
        assert!(close(e[(1, 0)], 7f64.sin(), 1e-13));
    }

    #[test]
    fn coadjoint_examples() {
        let a = ax_b();
        let out = coadjoint_apply(&a, &GroupCoordinates(vec![1.0, 0.0]), &[0.0, 1.0]);
        assert!(close(out[0], 0.0, 1e-15));
        assert!(close(out[1], (-1f64).exp(), 1e-15));
        assert!(close(out[1], 0.3678794, 1e-7));

        let h = heisenberg();
        let out = coadjoint_apply(&h, &GroupCoordinates(vec![2.0, 0.0, 0.0]), &[0.0, 0.0, 1.0]);
        assert_eq!(out, vec![0.0, -2.0, 1.0]);
        let l = [0.5, -1.5, 2.5];
        assert_eq!(coadjoint_apply(&h, &GroupCoordinates::identity(3), &l), l.to_vec());
    }

    #[test]
    fn phi_examples() {
        let a = ax_b();
        let d = MonomialDatum::new(&a, &[a.unit(1)], &[int(1)]).unwrap();
        // adapted order (X, A)
        assert_eq!(phi_in_chart(&d, &[0.0, 0.0], &[0.25]).unwrap(), vec![1.0, 0.25]);
        let out = phi_in_chart(&d, &[0.0, 1.0], &[0.0]).unwrap();
        assert!(close(out[0], (-1f64).exp(), 1e-15));

        let h = heisenberg();
        let d = MonomialDatum::new(&h, &[h.unit(1), h.unit(2)], &[int(0), int(1)]).unwrap();
        // adapted order (Y, Z, X): t moves along X in the third slot.
        let out = phi_in_chart(&d, &[0.0, 0.0, 2.0], &[0.0]).unwrap();
        assert_eq!(out[0], -2.0);
        assert!(phi_in_chart(&d, &[0.0], &[0.0]).is_err());
    }

    #[test]
    fn jacobian_examples() {
        let a = ax_b();
        let d = MonomialDatum::new(&a, &[a.unit(1)], &[int(1)]).unwrap();
        let r = fd_jacobian(&d, &[int(0)], 1e-4, 1e-8).unwrap();
        assert!(close(r.j[(0, 0)], 0.0, 1e-6) && close(r.j[(0, 1)], -1.0, 1e-6));
        assert!(r.max_dev_topleft < 1e-6 && r.max_dev_topright < 1e-6 && r.max_dev_bottomright < 1e-9);
        assert_eq!((r.numerical_rank_j, r.expected_rank), (2, 2));

        let h = heisenberg();
        let d = MonomialDatum::new(&h, &[h.unit(1), h.unit(2)], &[int(0), int(1)]).unwrap();
        let r = fd_jacobian(&d, &[int(3)], 1e-4, 1e-8).unwrap();
        assert_eq!((r.expected_rank, r.numerical_rank_j), (2, 2));

        let ab = LieAlgebra::abelian("R3", &["P", "Q", "R"]).unwrap();
        let d = MonomialDatum::new(&ab, &[ab.unit(0)], &[int(2)]).unwrap();
        let r = fd_jacobian(&d, &[int(1), int(-1)], 1e-4, 1e-8).unwrap();
        assert!(r.j.view((0, 0), (1, 5)).iter().all(|v| *v == 0.0));
        assert!(
            (r.j.view((1, 3), (2, 2)).into_owned() - DMatrix::<f64>::identity(2, 2))
                .abs()
                .max()
                < 1e-9
        );
        assert_eq!(r.bottom_left(1), DMatrix::zeros(2, 3));
    }

    #[test]
    fn numerical_rank_examples() {
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1e-15]));
        assert_eq!(numerical_rank(&d, 1e-8), 1);
        assert_eq!(numerical_rank(&DMatrix::identity(4, 4), 1e-8), 4);
        assert_eq!(numerical_rank(&DMatrix::zeros(3, 2), 1e-8), 0);
        assert_eq!(numerical_rank(&DMatrix::zeros(0, 2), 1e-8), 0);
    }

    #[test]
    fn numerical_rank_matches_exact_rank() {
        // Rank-2 product of 5x2 and 2x5 rational factors.
        let u = crate::rational::MatQ::from_ints(&[&[1, 0], &[2, 1], &[0, 3], &[-1, 1], &[4, -2]]);
        let v = crate::rational::MatQ::from_ints(&[&[1, 2, 0, -1, 3], &[0, 1, 1, 2, -2]]);
        let mut p = u.mul(&v);
        p[(0, 0)] = p[(0, 0)].clone() / int(3);
        p[(1, 0)] = p[(1, 0)].clone() / int(3);
        p[(2, 0)] = p[(2, 0)].clone() / int(3);
        p[(3, 0)] = p[(3, 0)].clone() / int(3);
        p[(4, 0)] = p[(4, 0)].clone() / int(3);
        assert_eq!(crate::linalg::rank_exact(&p), 2);
        assert_eq!(numerical_rank(&p.to_f64(), 1e-8), 2);
    }

    #[test]
    fn first_order_derivative_of_ad_exp() {
        // [A,X]=X, [A,Y]=2Y: (ad A)^2 != 0 so the O(h) error is visible.
        let mut l = LieAlgebra::abelian("r", &["A", "X", "Y"]).unwrap();
        l.set_bracket(0, 1, &VectorQ::from_ints(&[0, 1, 0]));
        l.set_bracket(0, 2, &VectorQ::from_ints(&[0, 0, 2]));
        let z = [1.0, 0.5, -0.25];
        let ad = ad_matrix_f64(&l, &z);
        let err = |h: f64| ((ad_exp(&l, &z, h) - DMatrix::identity(3, 3)) / h - &ad).abs().max();
        let ratio = err(1e-3) / err(1e-4);
        assert!((8.0..=12.0).contains(&ratio), "ratio {ratio}");
    }
}

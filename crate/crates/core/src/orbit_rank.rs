//! Moment matrix, stabilizers and the generic `H`-orbit dimension on the
//! spectral variety.
//!
//! For `l` in the dual, `M(l)` is the `m x n` matrix `l([Y_i, B_j])` where
//! `B_j` runs over the adapted basis. Its rank is `dim H.l`, so the action is
//! free at `l` exactly when the rank is `m`.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::{in_span, left_nullspace, nullspace, rank_exact};
use crate::monomial::{MonomialDatum, MonomialError};
use crate::poly::{minor_determinant, Poly};
use crate::rational::{random_int, MatQ, Rational, VectorQ};

pub const DEFAULT_TRIALS: usize = 20;
pub const DEFAULT_BOUND: u64 = 1_000_000;
pub const DEFAULT_SYMBOLIC_THRESHOLD: usize = 8;

/// Fixed seed for locating a witness of a certifying minor.
const SYMBOLIC_WITNESS_SEED: u64 = 0x005e_ed0f_0b17;
const SYMBOLIC_WITNESS_BOUND: u64 = 1000;
const SYMBOLIC_WITNESS_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankError {
    #[error("symbolic rank limited to dimension {threshold}, algebra has dimension {n}")]
    ThresholdExceeded { n: usize, threshold: usize },
    #[error("dual vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Chart(#[from] MonomialError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentMatrix(pub MatQ);

impl MomentMatrix {
    pub fn rank(&self) -> usize {
        rank_exact(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerReport {
    /// The functional, original coordinates.
    pub point: VectorQ,
    pub rank_m: usize,
    pub dim_h_orbit: usize,
    /// Basis of `h(l)` in original algebra coordinates.
    pub h_stab_basis: Vec<VectorQ>,
    pub dim_g_orbit: usize,
    /// Basis of `g(l)` in original algebra coordinates.
    pub g_stab_basis: Vec<VectorQ>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankMethod {
    Probabilistic { trials: usize, bound: u64, seed: u64 },
    Symbolic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericRankResult {
    pub d_tau: usize,
    pub m: usize,
    /// Chart coordinates of a point where the rank equals `d_tau`.
    pub witness: Vec<Rational>,
    pub method: RankMethod,
    pub is_free: bool,
}

fn check_dual(d: &MonomialDatum, l: &VectorQ) -> Result<(), RankError> {
    if l.len() != d.n() {
        return Err(RankError::DimensionMismatch {
            expected: d.n(),
            found: l.len(),
        });
    }
    Ok(())
}

/// `M(l)[i][j] = l([Y_i, B_j])`, columns in adapted order.
pub fn moment_matrix(d: &MonomialDatum, l: &VectorQ) -> Result<MomentMatrix, RankError> {
    check_dual(d, l)?;
    let alg = d.algebra();
    let gens = d.subalgebra().generators();
    let mut m = MatQ::zeros(d.m(), d.n());
    for (i, y) in gens.iter().enumerate() {
        for j in 0..d.n() {
            let b = alg.bracket(y, &d.adapted_vector(j)).expect("lengths checked");
            m[(i, j)] = l.dot(&b);
        }
    }
    Ok(MomentMatrix(m))
}

pub fn rank_exact_of(m: &MatQ) -> usize {
    rank_exact(m)
}

/// `B(l)[i][j] = l([Z_i, Z_j])` in the original basis.
pub fn skew_form(d: &MonomialDatum, l: &VectorQ) -> MatQ {
    let alg = d.algebra();
    let n = d.n();
    let mut b = MatQ::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = l.dot(&alg.basis_bracket(i, j));
            b[(j, i)] = -v.clone();
            b[(i, j)] = v;
        }
    }
    b
}

pub fn stabilizer_report(d: &MonomialDatum, l: &VectorQ) -> Result<StabilizerReport, RankError> {
    let mm = moment_matrix(d, l)?;
    let rank_m = mm.rank();
    let gens = d.subalgebra().generators();
    let h_stab_basis: Vec<VectorQ> = left_nullspace(&mm.0)
        .into_iter()
        .map(|a| {
            gens.iter()
                .zip(a.iter())
                .fold(VectorQ::zeros(d.n()), |acc, (y, c)| acc.add(&y.scale(c)))
        })
        .collect();
    let b = skew_form(d, l);
    let g_stab_basis = nullspace(&b);
    Ok(StabilizerReport {
        point: l.clone(),
        rank_m,
        dim_h_orbit: rank_m,
        h_stab_basis,
        dim_g_orbit: d.n() - g_stab_basis.len(),
        g_stab_basis,
    })
}

/// Exact rank of `M` at the chart point `x`.
pub fn rank_at(d: &MonomialDatum, x: &[Rational]) -> Result<usize, RankError> {
    let l = d.point_on_variety(x)?;
    Ok(moment_matrix(d, &l)?.rank())
}

/// Samples `trials` integer chart points in `[-bound, bound]` and returns the
/// largest rank seen with the first point attaining it. Each miss of the true
/// generic rank has probability at most `min(m, n) / (2 bound + 1)`.
pub fn generic_h_orbit_dim(d: &MonomialDatum, trials: usize, bound: u64, seed: u64) -> GenericRankResult {
    let trials = trials.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = d.chart_dim();
    let m = d.m();
    let mut best: Option<(usize, Vec<Rational>)> = None;
    for _ in 0..trials {
        let x: Vec<Rational> = (0..k).map(|_| random_int(&mut rng, bound)).collect();
        let r = rank_at(d, &x).expect("chart length matches");
        if best.as_ref().is_none_or(|(b, _)| r > *b) {
            best = Some((r, x));
        }
        if best.as_ref().is_some_and(|(b, _)| *b == m) {
            break;
        }
    }
    let (d_tau, witness) = best.expect("at least one trial");
    GenericRankResult {
        d_tau,
        m,
        witness,
        method: RankMethod::Probabilistic { trials, bound, seed },
        is_free: d_tau == m,
    }
}

/// Entries of `M` as affine polynomials in the chart coordinates.
pub fn symbolic_moment_matrix(d: &MonomialDatum) -> Vec<Vec<Poly>> {
    let k = d.chart_dim();
    let base = d.point_on_variety(&vec![Rational::zero(); k]).expect("length");
    let directions: Vec<VectorQ> = (0..k).map(|r| d.adapted_inverse().column(d.m() + r)).collect();
    let alg = d.algebra();
    d.subalgebra()
        .generators()
        .iter()
        .map(|y| {
            (0..d.n())
                .map(|j| {
                    let b = alg.bracket(y, &d.adapted_vector(j)).expect("lengths");
                    let coeffs: Vec<Rational> = directions.iter().map(|dir| dir.dot(&b)).collect();
                    Poly::affine(base.dot(&b), &coeffs)
                })
                .collect()
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Largest `k` with a `k x k` minor of `M(x)` that is a nonzero polynomial in
/// the chart coordinates, searched largest-first. The witness is a sampled
/// point where that minor does not vanish.
pub fn symbolic_generic_rank(d: &MonomialDatum, threshold: usize) -> Result<GenericRankResult, RankError> {
    if d.n() > threshold {
        return Err(RankError::ThresholdExceeded { n: d.n(), threshold });
    }
    let entries = symbolic_moment_matrix(d);
    let nvars = d.chart_dim();
    let m = d.m();
    let live_rows: Vec<usize> = (0..m).filter(|&i| entries[i].iter().any(|p| !p.is_zero())).collect();
    let live_cols: Vec<usize> = (0..d.n())
        .filter(|&j| (0..m).any(|i| !entries[i][j].is_zero()))
        .collect();
    let max_k = live_rows.len().min(live_cols.len());
    for k in (1..=max_k).rev() {
        for rs in combinations(live_rows.len(), k) {
            let rows: Vec<usize> = rs.iter().map(|&i| live_rows[i]).collect();
            for cs in combinations(live_cols.len(), k) {
                let cols: Vec<usize> = cs.iter().map(|&j| live_cols[j]).collect();
                let det = minor_determinant(&entries, &rows, &cols, nvars);
                if !det.is_zero() {
                    let witness = nonvanishing_point(&det);
                    debug_assert_eq!(rank_at(d, &witness).ok(), Some(k));
                    return Ok(GenericRankResult {
                        d_tau: k,
                        m,
                        witness,
                        method: RankMethod::Symbolic,
                        is_free: k == m,
                    });
                }
            }
        }
    }
    Ok(GenericRankResult {
        d_tau: 0,
        m,
        witness: vec![Rational::zero(); nvars],
        method: RankMethod::Symbolic,
        is_free: m == 0,
    })
}

fn nonvanishing_point(p: &Poly) -> Vec<Rational> {
    let zero = vec![Rational::zero(); p.nvars()];
    if !p.eval(&zero).is_zero() {
        return zero;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SYMBOLIC_WITNESS_SEED);
    for _ in 0..SYMBOLIC_WITNESS_ATTEMPTS {
        let x: Vec<Rational> = (0..p.nvars())
            .map(|_| random_int(&mut rng, SYMBOLIC_WITNESS_BOUND))
            .collect();
        if !p.eval(&x).is_zero() {
            return x;
        }
    }
    unreachable!("a nonzero polynomial of degree {} vanished at every sample", p.degree())
}

/// Exact check that `h(l)` is contained in `g(l)`.
pub fn h_stab_in_g_stab(r: &StabilizerReport) -> bool {
    r.h_stab_basis.iter().all(|v| in_span(&r.g_stab_basis, v))
}

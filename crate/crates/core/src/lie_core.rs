//! Finite-dimensional real Lie algebras given by exact structure constants.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::{rank_exact, row_space_basis};
use crate::rational::{random_small, MatQ, Rational, VectorQ};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis names must be distinct, `{0}` repeated")]
    DuplicateBasisName(String),
}

/// A real Lie algebra with basis `Z_0..Z_{n-1}` and
/// `[Z_i, Z_j] = sum_k c[i][j][k] Z_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    basis_names: Vec<String>,
    c: Vec<Rational>,
}

/// A failed structural identity. Indices are 0-based basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `c[i][j][k] + c[j][i][k] != 0` (for `i == j`, `c[i][i][k] != 0`).
    Antisymmetry {
        i: usize,
        j: usize,
        k: usize,
        residual: Rational,
    },
    /// Component `k` of the cyclic sum `[[Z_i,Z_j],Z_l] + [[Z_j,Z_l],Z_i] + [[Z_l,Z_i],Z_j]`.
    Jacobi {
        i: usize,
        j: usize,
        l: usize,
        k: usize,
        residual: Rational,
    },
}

impl Violation {
    pub fn describe(&self, alg: &LieAlgebra) -> String {
        let n = |i: usize| alg.basis_names[i].as_str();
        match self {
            Violation::Antisymmetry { i, j, k, residual } => format!(
                "antisymmetry fails at ({}, {}) component {}: residual {residual}",
                n(*i),
                n(*j),
                n(*k)
            ),
            Violation::Jacobi { i, j, l, k, residual } => format!(
                "Jacobi identity fails at ({}, {}, {}) component {}: residual {residual}",
                n(*i),
                n(*j),
                n(*l),
                n(*k)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exponentiality {
    PassedSampling,
    /// An element whose adjoint has a nonzero purely imaginary eigenvalue.
    FailedWithWitness(VectorQ),
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub is_valid: bool,
    pub is_solvable: bool,
    /// `dim g, dim [g,g], ...` until the series stabilises.
    pub derived_series_dims: Vec<usize>,
    pub lower_central_series_dims: Vec<usize>,
    pub is_nilpotent: bool,
    pub is_unimodular: bool,
    pub exponentiality: Exponentiality,
}

impl LieAlgebra {
    /// The abelian algebra on the given basis names.
    pub fn abelian(name: &str, basis_names: &[&str]) -> Result<Self, LieError> {
        Self::from_constants(
            name,
            basis_names.iter().map(|s| s.to_string()).collect(),
            vec![Rational::zero(); basis_names.len().pow(3)],
        )
    }

    /// Raw constructor; no identities are enforced (see [`LieAlgebra::validate`]).
    pub fn from_constants(name: &str, basis_names: Vec<String>, c: Vec<Rational>) -> Result<Self, LieError> {
        let n = basis_names.len();
        if c.len() != n * n * n {
            return Err(LieError::DimensionMismatch {
                expected: n * n * n,
                found: c.len(),
            });
        }
        for (i, a) in basis_names.iter().enumerate() {
            if basis_names[..i].contains(a) {
                return Err(LieError::DuplicateBasisName(a.clone()));
            }
        }
        Ok(LieAlgebra {
            name: name.to_string(),
            basis_names,
            c,
        })
    }

    /// Sets `[Z_i, Z_j] = v` and `[Z_j, Z_i] = -v`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: &VectorQ) {
        let n = self.dim();
        assert_eq!(v.len(), n);
        for k in 0..n {
            self.c[(i * n + j) * n + k] = v[k].clone();
            self.c[(j * n + i) * n + k] = -v[k].clone();
        }
    }

    /// Sets a single structure constant without touching its mirror.
    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let n = self.dim();
        self.c[(i * n + j) * n + k] = v;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis_names.iter().position(|b| b == name)
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        let n = self.dim();
        &self.c[(i * n + j) * n + k]
    }

    /// `[Z_i, Z_j]` in basis coordinates.
    pub fn basis_bracket(&self, i: usize, j: usize) -> VectorQ {
        let n = self.dim();
        VectorQ(self.c[(i * n + j) * n..(i * n + j + 1) * n].to_vec())
    }

    pub fn unit(&self, i: usize) -> VectorQ {
        VectorQ::unit(self.dim(), i)
    }

    fn check_len(&self, v: &VectorQ) -> Result<(), LieError> {
        if v.len() != self.dim() {
            return Err(LieError::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Exact check of antisymmetry and the Jacobi identity.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let residual = if i == j {
                        self.constant(i, i, k).clone()
                    } else {
                        self.constant(i, j, k) + self.constant(j, i, k)
                    };
                    if !residual.is_zero() {
                        out.push(Violation::Antisymmetry { i, j, k, residual });
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    let (zi, zj, zl) = (self.unit(i), self.unit(j), self.unit(l));
                    let sum = self
                        .bracket_unchecked(&self.bracket_unchecked(&zi, &zj), &zl)
                        .add(&self.bracket_unchecked(&self.bracket_unchecked(&zj, &zl), &zi))
                        .add(&self.bracket_unchecked(&self.bracket_unchecked(&zl, &zi), &zj));
                    for (k, residual) in sum.0.into_iter().enumerate() {
                        if !residual.is_zero() {
                            out.push(Violation::Jacobi { i, j, l, k, residual });
                        }
                    }
                }
            }
        }
        out
    }

    fn bracket_unchecked(&self, u: &VectorQ, v: &VectorQ) -> VectorQ {
        let n = self.dim();
        let mut out = VectorQ::zeros(n);
        for i in (0..n).filter(|&i| !u[i].is_zero()) {
            for j in (0..n).filter(|&j| !v[j].is_zero()) {
                let coeff = &u[i] * &v[j];
                for k in 0..n {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        out[k] += &coeff * c;
                    }
                }
            }
        }
        out
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, u: &VectorQ, v: &VectorQ) -> Result<VectorQ, LieError> {
        self.check_len(u)?;
        self.check_len(v)?;
        Ok(self.bracket_unchecked(u, v))
    }

    /// Matrix of `ad u`; column `j` is `[u, Z_j]`.
    pub fn ad_matrix(&self, u: &VectorQ) -> Result<MatQ, LieError> {
        self.check_len(u)?;
        let n = self.dim();
        let mut m = MatQ::zeros(n, n);
        for j in 0..n {
            let col = self.bracket_unchecked(u, &self.unit(j));
            for i in 0..n {
                m[(i, j)] = col[i].clone();
            }
        }
        Ok(m)
    }

    /// `trace(ad Z_i) = sum_k c[i][k][k]`.
    pub fn ad_trace_of_basis(&self, i: usize) -> Rational {
        (0..self.dim()).fold(Rational::zero(), |acc, k| acc + self.constant(i, k, k))
    }

    pub fn is_unimodular(&self) -> bool {
        (0..self.dim()).all(|i| self.ad_trace_of_basis(i).is_zero())
    }

    /// Echelon basis of `[A, B]` for subspaces given by spanning sets.
    fn bracket_span(&self, a: &[VectorQ], b: &[VectorQ]) -> Vec<VectorQ> {
        let brackets: Vec<VectorQ> = a
            .iter()
            .flat_map(|u| b.iter().map(move |v| (u, v)))
            .map(|(u, v)| self.bracket_unchecked(u, v))
            .filter(|w| !w.is_zero())
            .collect();
        row_space_basis(&brackets, self.dim())
    }

    fn full_basis(&self) -> Vec<VectorQ> {
        (0..self.dim()).map(|i| self.unit(i)).collect()
    }

    /// Dimensions of `g, [g,g], [[g,g],[g,g]], ...` until stable.
    pub fn derived_series_dims(&self) -> Vec<usize> {
        let mut current = self.full_basis();
        let mut dims = vec![current.len()];
        loop {
            let next = self.bracket_span(&current, &current);
            if next.len() == current.len() || next.is_empty() {
                if next.len() < current.len() {
                    dims.push(0);
                }
                return dims;
            }
            dims.push(next.len());
            current = next;
        }
    }

    /// Dimensions of `g, [g,g], [g,[g,g]], ...` until stable.
    pub fn lower_central_series_dims(&self) -> Vec<usize> {
        let full = self.full_basis();
        let mut current = full.clone();
        let mut dims = vec![current.len()];
        loop {
            let next = self.bracket_span(&full, &current);
            if next.len() == current.len() || next.is_empty() {
                if next.len() < current.len() {
                    dims.push(0);
                }
                return dims;
            }
            dims.push(next.len());
            current = next;
        }
    }

    /// Samples elements and screens `ad u` for nonzero purely imaginary
    /// eigenvalues. The basis vectors are always checked first.
    pub fn exponentiality_screen(&self, samples: usize, seed: u64) -> Exponentiality {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.dim();
        let candidates = (0..n)
            .map(|i| self.unit(i))
            .chain((0..samples).map(|_| VectorQ((0..n).map(|_| random_small(&mut rng, 6, 4)).collect())));
        for u in candidates {
            let ad = self.ad_matrix(&u).expect("length matches");
            if has_imaginary_eigenvalue(&ad) {
                return Exponentiality::FailedWithWitness(u);
            }
        }
        Exponentiality::PassedSampling
    }

    pub fn structure_report(&self, exp_samples: usize, seed: u64) -> StructureReport {
        let is_valid = self.validate().is_empty();
        let derived = self.derived_series_dims();
        let lower = self.lower_central_series_dims();
        let is_solvable = derived.last() == Some(&0) || self.dim() == 0;
        let is_nilpotent = lower.last() == Some(&0) || self.dim() == 0;
        StructureReport {
            is_valid,
            is_solvable,
            derived_series_dims: derived,
            lower_central_series_dims: lower,
            is_nilpotent,
            is_unimodular: self.is_unimodular(),
            exponentiality: self.exponentiality_screen(exp_samples, seed),
        }
    }

    /// Rank of the span of all brackets, i.e. `dim [g, g]`.
    pub fn derived_algebra_dim(&self) -> usize {
        let brackets: Vec<VectorQ> = (0..self.dim())
            .flat_map(|i| (0..self.dim()).map(move |j| (i, j)))
            .map(|(i, j)| self.basis_bracket(i, j))
            .collect();
        if brackets.is_empty() {
            return 0;
        }
        rank_exact(&MatQ::from_rows(&brackets, self.dim()))
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim())
    }
}

/// Characteristic polynomial `det(x I - A)` by Faddeev-LeVerrier, exact.
/// Coefficients are returned lowest degree first; the leading one is 1.
pub fn characteristic_polynomial(a: &MatQ) -> Vec<Rational> {
    let n = a.nrows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = MatQ::zeros(n, n);
    let ident = MatQ::identity(n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
        m = a.mul(&m).add(&ident.scale(&coeffs[n - k + 1]));
        let am = a.mul(&m);
        coeffs[n - k] = -am.trace() / Rational::from_integer((k as i64).into());
    }
    coeffs
}

/// True if `a` has a nonzero purely imaginary eigenvalue. Exact.
///
/// With `p` the characteristic polynomial stripped of its zero roots, write
/// `p(iy) = R(y) + i I(y)` with `R`, `I` real. A root `iy`, `y != 0`, exists
/// iff `gcd(R, I)` has a real root, which a Sturm sequence counts.
pub fn has_imaginary_eigenvalue(a: &MatQ) -> bool {
    let p = characteristic_polynomial(a);
    let lowest = p.iter().position(|c| !c.is_zero()).unwrap_or(p.len() - 1);
    let p = &p[lowest..];
    let mut re = vec![Rational::zero(); p.len()];
    let mut im = vec![Rational::zero(); p.len()];
    for (k, c) in p.iter().enumerate() {
        // i^k cycles through 1, i, -1, -i.
        match k % 4 {
            0 => re[k] = c.clone(),
            1 => im[k] = c.clone(),
            2 => re[k] = -c,
            _ => im[k] = -c,
        }
    }
    let g = upoly_gcd(trim(re), trim(im));
    count_real_roots(&g) > 0
}

/// Univariate polynomials over Q, lowest degree first, no trailing zeros.
fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn upoly_rem(mut a: Vec<Rational>, b: &[Rational]) -> Vec<Rational> {
    let lead = b.last().expect("nonzero divisor");
    while a.len() >= b.len() {
        let q = a.last().unwrap() / lead;
        let shift = a.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            a[shift + i] -= &q * c;
        }
        a.pop();
        a = trim(a);
    }
    a
}

fn upoly_gcd(mut a: Vec<Rational>, mut b: Vec<Rational>) -> Vec<Rational> {
    while !b.is_empty() {
        let r = upoly_rem(a, &b);
        a = b;
        b = r;
    }
    a
}

fn derivative(p: &[Rational]) -> Vec<Rational> {
    let d = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rational::from_integer((k as i64).into()))
        .collect();
    trim(d)
}

/// Number of distinct real roots of `p`, by Sturm's theorem.
fn count_real_roots(p: &[Rational]) -> usize {
    if p.len() <= 1 {
        return 0;
    }
    let mut seq = vec![p.to_vec(), derivative(p)];
    while seq.last().is_some_and(|q| !q.is_empty()) {
        let n = seq.len();
        let r = upoly_rem(seq[n - 2].clone(), &seq[n - 1]);
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq.pop();
    // Sign at +inf is the sign of the leading coefficient; at -inf it flips
    // with odd degree.
    let changes = |at_neg_inf: bool| {
        let signs: Vec<bool> = seq
            .iter()
            .map(|q| {
                let pos = q.last().unwrap().is_positive();
                if at_neg_inf && (q.len() - 1) % 2 == 1 {
                    !pos
                } else {
                    pos
                }
            })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    changes(true) - changes(false)
}

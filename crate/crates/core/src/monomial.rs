//! The monomial datum `(h, f)`: a subalgebra, a character functional on it,
//! an adapted basis `Y_1..Y_m, X_1..X_{n-m}` of the whole algebra and the
//! chart `x -> l` onto the affine variety `{l : l|_h = f}`.

use num_traits::Zero;
use thiserror::Error;

use crate::lie_core::{LieAlgebra, LieError};
use crate::linalg::{inverse, rank_exact, solve_in_span};
use crate::rational::{MatQ, Rational, VectorQ};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("generators are linearly dependent: rank {rank} < {m}")]
    RankDeficient { rank: usize, m: usize },
    /// Indices are 0-based generator indices; `bracket` is `[Y_i, Y_j]`.
    #[error("subalgebra is not closed: [Y{}, Y{}] = {bracket} is outside the span", .i + 1, .j + 1)]
    NotClosed { i: usize, j: usize, bracket: VectorQ },
    #[error("functional is not a character: f([Y{}, Y{}]) = {value} != 0", .i + 1, .j + 1)]
    NotACharacter { i: usize, j: usize, value: Rational },
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// A subalgebra `h` given by generator rows `Y_1..Y_m` in algebra coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    dim: usize,
    generators: Vec<VectorQ>,
}

impl Subalgebra {
    pub fn m(&self) -> usize {
        self.generators.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[VectorQ] {
        &self.generators
    }

    pub fn contains(&self, v: &VectorQ) -> bool {
        solve_in_span(&self.generators, v).is_some()
    }
}

/// Values `f(Y_j)` of a functional on `h` that kills `[h, h]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterFunctional {
    values: Vec<Rational>,
}

impl CharacterFunctional {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `f(v)` for `v` in `h`, `None` if `v` is outside `h`.
    pub fn apply(&self, h: &Subalgebra, v: &VectorQ) -> Option<Rational> {
        let a = solve_in_span(&h.generators, v)?;
        Some(
            a.iter()
                .zip(&self.values)
                .fold(Rational::zero(), |acc, (x, y)| acc + x * y),
        )
    }
}

pub fn check_subalgebra(l: &LieAlgebra, rows: &[VectorQ]) -> Result<Subalgebra, MonomialError> {
    let n = l.dim();
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(LieError::DimensionMismatch {
            expected: n,
            found: bad.len(),
        }
        .into());
    }
    let m = rows.len();
    if m > 0 {
        let rank = rank_exact(&MatQ::from_rows(rows, n));
        if rank < m {
            return Err(MonomialError::RankDeficient { rank, m });
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            let b = l.bracket(&rows[i], &rows[j])?;
            if solve_in_span(rows, &b).is_none() {
                return Err(MonomialError::NotClosed { i, j, bracket: b });
            }
        }
    }
    Ok(Subalgebra {
        dim: n,
        generators: rows.to_vec(),
    })
}

pub fn check_character(
    l: &LieAlgebra,
    h: &Subalgebra,
    f_vals: &[Rational],
) -> Result<CharacterFunctional, MonomialError> {
    if f_vals.len() != h.m() {
        return Err(MonomialError::LengthMismatch {
            expected: h.m(),
            found: f_vals.len(),
        });
    }
    let f = CharacterFunctional {
        values: f_vals.to_vec(),
    };
    let g = &h.generators;
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let b = l.bracket(&g[i], &g[j])?;
            let value = f.apply(h, &b).expect("subalgebra is closed");
            if !value.is_zero() {
                return Err(MonomialError::NotACharacter { i, j, value });
            }
        }
    }
    Ok(f)
}

/// Everything needed to work on the spectral variety of one monomial
/// representation.
///
/// `adapted` has rows `Y_1..Y_m, X_1..X_{n-m}`; the `X_r` are the first
/// standard basis vectors (in index order) that keep the rows independent.
/// A functional with adapted dual coordinates `v` (so `v_r = l(B_r)` for the
/// adapted rows `B_r`) has original coordinates `adapted^{-1} v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialDatum {
    algebra: LieAlgebra,
    subalgebra: Subalgebra,
    functional: CharacterFunctional,
    adapted: MatQ,
    adapted_inv: MatQ,
    completion: Vec<usize>,
}

pub fn adapt_basis(l: &LieAlgebra, h: &Subalgebra, f: &CharacterFunctional) -> MonomialDatum {
    let n = l.dim();
    let mut rows = h.generators.clone();
    let mut completion = Vec::new();
    for k in 0..n {
        if rows.len() == n {
            break;
        }
        let e = VectorQ::unit(n, k);
        rows.push(e);
        if rank_exact(&MatQ::from_rows(&rows, n)) == rows.len() {
            completion.push(k);
        } else {
            rows.pop();
        }
    }
    let adapted = MatQ::from_rows(&rows, n);
    let adapted_inv = inverse(&adapted).expect("completed basis is invertible");
    MonomialDatum {
        algebra: l.clone(),
        subalgebra: h.clone(),
        functional: f.clone(),
        adapted,
        adapted_inv,
        completion,
    }
}

impl MonomialDatum {
    /// Validates and adapts in one step.
    pub fn new(l: &LieAlgebra, rows: &[VectorQ], f_vals: &[Rational]) -> Result<Self, MonomialError> {
        let h = check_subalgebra(l, rows)?;
        let f = check_character(l, &h, f_vals)?;
        Ok(adapt_basis(l, &h, &f))
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn subalgebra(&self) -> &Subalgebra {
        &self.subalgebra
    }

    pub fn functional(&self) -> &CharacterFunctional {
        &self.functional
    }

    pub fn n(&self) -> usize {
        self.algebra.dim()
    }

    pub fn m(&self) -> usize {
        self.subalgebra.m()
    }

    /// Dimension of the spectral variety, `n - m`.
    pub fn chart_dim(&self) -> usize {
        self.n() - self.m()
    }

    pub fn adapted_basis(&self) -> &MatQ {
        &self.adapted
    }

    pub fn adapted_inverse(&self) -> &MatQ {
        &self.adapted_inv
    }

    /// Indices of the standard basis vectors used as `X_1..X_{n-m}`.
    pub fn completion_indices(&self) -> &[usize] {
        &self.completion
    }

    /// Adapted basis vector `B_r` (generators first, then completion).
    pub fn adapted_vector(&self, r: usize) -> VectorQ {
        self.adapted.row(r)
    }

    fn check_point(&self, len: usize) -> Result<(), MonomialError> {
        if len != self.chart_dim() {
            return Err(MonomialError::LengthMismatch {
                expected: self.chart_dim(),
                found: len,
            });
        }
        Ok(())
    }

    /// The functional with `l(Y_j) = f_j` and `l(X_r) = x_r`, in original
    /// basis coordinates (`l_k = l(Z_k)`).
    pub fn point_on_variety(&self, x: &[Rational]) -> Result<VectorQ, MonomialError> {
        self.check_point(x.len())?;
        let v = VectorQ(self.functional.values.iter().chain(x).cloned().collect());
        Ok(self.adapted_inv.mul_vec(&v))
    }

    /// Float version of [`MonomialDatum::point_on_variety`].
    pub fn point_on_variety_f64(&self, x: &[f64]) -> Result<Vec<f64>, MonomialError> {
        self.check_point(x.len())?;
        let v: Vec<f64> = self
            .functional
            .values
            .iter()
            .map(crate::rational::to_f64)
            .chain(x.iter().copied())
            .collect();
        let inv = self.adapted_inv.to_f64();
        Ok((0..self.n())
            .map(|i| (0..self.n()).map(|j| inv[(i, j)] * v[j]).sum())
            .collect())
    }

    /// Adapted dual coordinates `(l(Y_1), .., l(Y_m), l(X_1), ..)` of a
    /// functional given in original coordinates.
    pub fn adapted_coordinates(&self, l: &VectorQ) -> VectorQ {
        self.adapted.mul_vec(l)
    }

    /// Chart coordinates of a functional that lies on the variety, `None`
    /// if it does not restrict to `f`.
    pub fn chart_coordinates(&self, l: &VectorQ) -> Option<Vec<Rational>> {
        let v = self.adapted_coordinates(l);
        let m = self.m();
        (v.0[..m] == self.functional.values[..]).then(|| v.0[m..].to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn heisenberg() -> LieAlgebra {
        let mut l = LieAlgebra::abelian("h3", &["X", "Y", "Z"]).unwrap();
        l.set_bracket(0, 1, &VectorQ::from_ints(&[0, 0, 1]));
        l
    }

    fn u(l: &LieAlgebra, i: usize) -> VectorQ {
        l.unit(i)
    }

    #[test]
    fn subalgebra_checks() {
        let h3 = heisenberg();
        assert!(check_subalgebra(&h3, &[u(&h3, 1), u(&h3, 2)]).is_ok());
        match check_subalgebra(&h3, &[u(&h3, 0), u(&h3, 1)]) {
            Err(MonomialError::NotClosed { i: 0, j: 1, bracket }) => assert_eq!(bracket, u(&h3, 2)),
            other => panic!("unexpected {other:?}"),
        }
        let trivial = check_subalgebra(&h3, &[]).unwrap();
        assert_eq!(trivial.m(), 0);
        assert_eq!(
            check_subalgebra(&h3, &[u(&h3, 1), u(&h3, 1).scale(&int(2))]),
            Err(MonomialError::RankDeficient { rank: 1, m: 2 })
        );
    }

    #[test]
    fn character_checks() {
        let h3 = heisenberg();
        let h = check_subalgebra(&h3, &[u(&h3, 1), u(&h3, 2)]).unwrap();
        assert!(check_character(&h3, &h, &[int(0), int(1)]).is_ok());

        let g = check_subalgebra(&h3, &[u(&h3, 0), u(&h3, 1), u(&h3, 2)]).unwrap();
        assert_eq!(
            check_character(&h3, &g, &[int(0), int(0), int(1)]),
            Err(MonomialError::NotACharacter {
                i: 0,
                j: 1,
                value: int(1)
            })
        );
        assert!(check_character(&h3, &g, &[int(0), int(0), int(0)]).is_ok());
        assert!(matches!(
            check_character(&h3, &g, &[int(0)]),
            Err(MonomialError::LengthMismatch { expected: 3, found: 1 })
        ));
    }

    #[test]
    fn greedy_completion() {
        let h3 = heisenberg();
        let d = MonomialDatum::new(&h3, &[u(&h3, 1), u(&h3, 2)], &[int(0), int(1)]).unwrap();
        assert_eq!(d.completion_indices(), &[0]);
        assert_eq!(d.adapted_vector(2), u(&h3, 0));

        let full = MonomialDatum::new(&h3, &[u(&h3, 0), u(&h3, 1), u(&h3, 2)], &[int(0), int(0), int(0)]).unwrap();
        assert!(full.completion_indices().is_empty());
        assert_eq!(full.point_on_variety(&[]).unwrap(), VectorQ::zeros(3));

        let none = MonomialDatum::new(&h3, &[], &[]).unwrap();
        assert_eq!(none.completion_indices(), &[0, 1, 2]);
        assert_eq!(none.adapted_basis(), &MatQ::identity(3));
    }

    #[test]
    fn chart_point_restricts_to_f() {
        let h3 = heisenberg();
        let d = MonomialDatum::new(&h3, &[u(&h3, 1), u(&h3, 2)], &[int(0), int(1)]).unwrap();
        let l = d.point_on_variety(&[int(5)]).unwrap();
        assert_eq!(l, VectorQ::from_ints(&[5, 0, 1]));
        assert_eq!(d.chart_coordinates(&l), Some(vec![int(5)]));
        assert!(d.point_on_variety(&[]).is_err());
    }

    #[test]
    fn skew_generators() {
        // h = span{X + Y, Z} with f = (1/2, 3).
        let h3 = heisenberg();
        let gens = [VectorQ::from_ints(&[1, 1, 0]), u(&h3, 2)];
        let d = MonomialDatum::new(&h3, &gens, &[ratio(1, 2), int(3)]).unwrap();
        let l = d.point_on_variety(&[int(-4)]).unwrap();
        assert_eq!(l.dot(&gens[0]), ratio(1, 2));
        assert_eq!(l.dot(&gens[1]), int(3));
        assert_eq!(d.adapted_basis().mul(d.adapted_inverse()), MatQ::identity(3));
    }
}

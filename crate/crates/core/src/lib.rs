//! Spectral and admissibility analysis for monomial representations of
//! exponential solvable Lie groups.
//!
//! A problem is a real Lie algebra given by rational structure constants,
//! a subalgebra `h` spanned by rational generators, and a character
//! functional `f` on `h`. The induced representation has spectral measure
//! absolutely continuous with respect to Plancherel measure exactly when
//! `H` acts freely on some point of the affine variety `f + h^perp`, which
//! is decided here by the generic rank of the moment matrix
//! `M(l)[i][j] = l([Y_i, Z_j])` over that variety.
//!
//! Layout:
//! - [`rational`], [`linalg`], [`poly`]: exact arithmetic substrate.
//! - [`lie_core`]: structure constants, brackets, structural checks.
//! - [`monomial`]: subalgebra, character, adapted basis and chart.
//! - [`orbit_rank`]: moment matrix, stabilizers, generic rank.
//! - [`numeric_geometry`]: coadjoint action and Jacobian verification.
//! - [`verdict`]: spectral and admissibility verdicts, full reports.
//! - [`io`]: problem file format, bundled corpus, report rendering.

pub mod cli;
pub mod io;
pub mod lie_core;
pub mod linalg;
pub mod monomial;
pub mod numeric_geometry;
pub mod orbit_rank;
pub mod poly;
pub mod rational;
pub mod verdict;

pub use lie_core::{LieAlgebra, StructureReport};
pub use monomial::{CharacterFunctional, MonomialDatum, Subalgebra};
pub use orbit_rank::{GenericRankResult, MomentMatrix, StabilizerReport};
pub use rational::{MatQ, Rational, VectorQ};
pub use verdict::{AnalysisConfig, AnalysisError, FullReport};

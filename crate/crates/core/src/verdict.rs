//! Spectral and admissibility verdicts, and the end-to-end report.
//!
//! The spectral measure is absolutely continuous iff `H` acts freely at some
//! point of the spectral variety (`d_tau = m`), singular otherwise. For a
//! nonunimodular group that same condition decides admissibility. For a
//! unimodular group free action is still necessary, and the free case is
//! reported as conjecturally not admissible.

use std::fmt;

use thiserror::Error;

use crate::lie_core::{Exponentiality, LieAlgebra, StructureReport};
use crate::monomial::{adapt_basis, check_character, check_subalgebra, MonomialDatum, MonomialError};
use crate::orbit_rank::{
    generic_h_orbit_dim, symbolic_generic_rank, GenericRankResult, RankError, DEFAULT_BOUND,
    DEFAULT_SYMBOLIC_THRESHOLD, DEFAULT_TRIALS,
};
use crate::rational::{Rational, VectorQ};

pub const DEFAULT_EXP_SAMPLES: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Spectral {
    AbsolutelyContinuous,
    Singular,
}

impl fmt::Display for Spectral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spectral::AbsolutelyContinuous => "AbsolutelyContinuous",
            Spectral::Singular => "Singular",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralVerdict {
    pub kind: Spectral,
    pub d_tau: usize,
    pub m: usize,
    /// Chart point with a free `H` action; present iff absolutely continuous.
    pub witness: Option<Vec<Rational>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Admissibility {
    Admissible,
    NotAdmissible,
    ConjecturallyNotAdmissible,
}

impl fmt::Display for Admissibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Admissibility::Admissible => "Admissible",
            Admissibility::NotAdmissible => "NotAdmissible",
            Admissibility::ConjecturallyNotAdmissible => "ConjecturallyNotAdmissible",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    /// Nonunimodular group with a free point: admissible vectors exist.
    FreeActionNonunimodular,
    /// No free point: the representation is not a subrepresentation of the
    /// regular representation.
    FailsNecessaryFreeAction,
    /// Unimodular group with a free point: open case, conjecturally no.
    UnimodularConjecture,
}

impl Reason {
    pub fn code(self) -> &'static str {
        match self {
            Reason::FreeActionNonunimodular => "free-action-nonunimodular",
            Reason::FailsNecessaryFreeAction => "fails-necessary-free-action",
            Reason::UnimodularConjecture => "unimodular-case-unresolved-conjectured-no",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityVerdict {
    pub kind: Admissibility,
    pub unimodular: bool,
    pub reason: Reason,
    /// False when the verdict rests on the conjecture rather than a theorem.
    pub established: bool,
}

pub fn spectral_verdict(d: &MonomialDatum, g: &GenericRankResult) -> SpectralVerdict {
    debug_assert_eq!(g.m, d.m());
    if g.is_free {
        SpectralVerdict {
            kind: Spectral::AbsolutelyContinuous,
            d_tau: g.d_tau,
            m: g.m,
            witness: Some(g.witness.clone()),
        }
    } else {
        SpectralVerdict {
            kind: Spectral::Singular,
            d_tau: g.d_tau,
            m: g.m,
            witness: None,
        }
    }
}

pub fn admissibility_verdict(s: &SpectralVerdict, unimodular: bool) -> AdmissibilityVerdict {
    let (kind, reason, established) = match (s.kind, unimodular) {
        (Spectral::Singular, _) => (Admissibility::NotAdmissible, Reason::FailsNecessaryFreeAction, true),
        (Spectral::AbsolutelyContinuous, false) => (Admissibility::Admissible, Reason::FreeActionNonunimodular, true),
        (Spectral::AbsolutelyContinuous, true) => (
            Admissibility::ConjecturallyNotAdmissible,
            Reason::UnimodularConjecture,
            false,
        ),
    };
    AdmissibilityVerdict {
        kind,
        unimodular,
        reason,
        established,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolicMode {
    /// Probabilistic rank only.
    Off,
    /// Also run the symbolic rank when the dimension is within the threshold.
    Auto,
    /// Always run the symbolic rank; exceeding the threshold is an error.
    Required,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisConfig {
    pub trials: usize,
    pub bound: u64,
    pub seed: u64,
    pub exp_samples: usize,
    pub symbolic: SymbolicMode,
    pub symbolic_threshold: usize,
    pub assume_exponential: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            trials: DEFAULT_TRIALS,
            bound: DEFAULT_BOUND,
            seed: 0,
            exp_samples: DEFAULT_EXP_SAMPLES,
            symbolic: SymbolicMode::Auto,
            symbolic_threshold: DEFAULT_SYMBOLIC_THRESHOLD,
            assume_exponential: false,
        }
    }
}

impl AnalysisConfig {
    /// Seed for the exponentiality screen, kept apart from the rank sampler.
    pub fn screen_seed(&self) -> u64 {
        self.seed ^ 0x9e37_79b9_7f4a_7c15
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("structure constants are not a Lie algebra:\n  {}", .0.join("\n  "))]
    InvalidAlgebra(Vec<String>),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error("algebra is not solvable (derived series dimensions {0:?})")]
    NotSolvable(Vec<usize>),
    #[error("algebra is not exponential: ad of {0} has a nonzero purely imaginary eigenvalue")]
    NotExponential(VectorQ),
    #[error(transparent)]
    Rank(#[from] RankError),
    #[error("internal disagreement: probabilistic d_tau = {probabilistic}, symbolic d_tau = {symbolic}")]
    Disagreement { probabilistic: usize, symbolic: usize },
}

impl AnalysisError {
    /// Process exit code for the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            AnalysisError::InvalidAlgebra(_) | AnalysisError::Monomial(_) | AnalysisError::Rank(_) => 1,
            AnalysisError::NotSolvable(_) | AnalysisError::NotExponential(_) => 2,
            AnalysisError::Disagreement { .. } => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullReport {
    pub datum: MonomialDatum,
    pub structure: StructureReport,
    pub generic: GenericRankResult,
    pub symbolic: Option<GenericRankResult>,
    pub spectral: SpectralVerdict,
    pub admissibility: AdmissibilityVerdict,
    pub warnings: Vec<String>,
    pub config: AnalysisConfig,
}

/// Structural checks shared by `validate` and `full_report`.
pub fn checked_structure(l: &LieAlgebra, config: &AnalysisConfig) -> Result<StructureReport, AnalysisError> {
    let violations = l.validate();
    if !violations.is_empty() {
        return Err(AnalysisError::InvalidAlgebra(
            violations.iter().map(|v| v.describe(l)).collect(),
        ));
    }
    let mut structure = if config.assume_exponential {
        let mut s = l.structure_report(0, config.screen_seed());
        s.exponentiality = Exponentiality::Skipped;
        s
    } else {
        l.structure_report(config.exp_samples, config.screen_seed())
    };
    structure.is_valid = true;
    if !structure.is_solvable {
        return Err(AnalysisError::NotSolvable(structure.derived_series_dims));
    }
    if let Exponentiality::FailedWithWitness(w) = &structure.exponentiality {
        return Err(AnalysisError::NotExponential(w.clone()));
    }
    Ok(structure)
}

pub fn full_report(
    l: &LieAlgebra,
    rows: &[VectorQ],
    f_vals: &[Rational],
    config: &AnalysisConfig,
) -> Result<FullReport, AnalysisError> {
    let violations = l.validate();
    if !violations.is_empty() {
        return Err(AnalysisError::InvalidAlgebra(
            violations.iter().map(|v| v.describe(l)).collect(),
        ));
    }
    let h = check_subalgebra(l, rows)?;
    let f = check_character(l, &h, f_vals)?;
    let datum = adapt_basis(l, &h, &f);
    let structure = checked_structure(l, config)?;

    let mut warnings = Vec::new();
    match structure.exponentiality {
        Exponentiality::PassedSampling => warnings.push(format!(
            "exponentiality screened by sampling only ({} basis elements and {} random elements)",
            l.dim(),
            config.exp_samples
        )),
        Exponentiality::Skipped => warnings.push("exponentiality assumed by override, not checked".to_string()),
        Exponentiality::FailedWithWitness(_) => unreachable!("rejected above"),
    }

    let generic = generic_h_orbit_dim(&datum, config.trials, config.bound, config.seed);
    let run_symbolic = match config.symbolic {
        SymbolicMode::Off => false,
        SymbolicMode::Required => true,
        SymbolicMode::Auto => {
            let within = l.dim() <= config.symbolic_threshold;
            if !within {
                warnings.push(format!(
                    "symbolic rank skipped: dimension {} exceeds threshold {}",
                    l.dim(),
                    config.symbolic_threshold
                ));
            }
            within
        }
    };
    let symbolic = if run_symbolic {
        let s = symbolic_generic_rank(&datum, config.symbolic_threshold)?;
        if s.d_tau != generic.d_tau {
            return Err(AnalysisError::Disagreement {
                probabilistic: generic.d_tau,
                symbolic: s.d_tau,
            });
        }
        Some(s)
    } else {
        None
    };

    let spectral = spectral_verdict(&datum, &generic);
    let admissibility = admissibility_verdict(&spectral, structure.is_unimodular);
    if !admissibility.established {
        warnings.push(
            "unimodular group with free action: admissibility is open; reported as conjecturally not admissible"
                .to_string(),
        );
    }
    Ok(FullReport {
        datum,
        structure,
        generic,
        symbolic,
        spectral,
        admissibility,
        warnings,
        config: config.clone(),
    })
}

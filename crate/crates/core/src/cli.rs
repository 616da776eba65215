//! Command line front end. The binary is a thin wrapper over [`run_cli`].

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::io::corpus;
use crate::io::parse::{format_combination, parse, ProblemFile};
use crate::io::report::{render_json, render_text};
use crate::lie_core::Exponentiality;
use crate::monomial::MonomialDatum;
use crate::numeric_geometry::{fd_jacobian, DEFAULT_RANK_TOL, DEFAULT_STEP};
use crate::orbit_rank::stabilizer_report;
use crate::rational::{parse_rational, Rational};
use crate::verdict::{checked_structure, full_report, AnalysisConfig, AnalysisError, SymbolicMode};

pub const SEED_ENV: &str = "ORBITADM_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_DISAGREEMENT: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "orbitadm",
    version,
    about = "Spectral and admissibility verdicts for monomial representations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure checks only.
    Validate {
        /// Problem file, or `corpus:NAME` for a bundled example.
        file: String,
        #[arg(long)]
        assume_exponential: bool,
    },
    /// Full analysis: generic orbit rank, spectral and admissibility verdicts.
    Verdict(VerdictArgs),
    /// Stabilizers and orbit dimensions at one point of the spectral variety.
    Rank {
        file: String,
        /// Chart coordinates x_1,...,x_{n-m}.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Finite-difference Jacobian of the coadjoint action at a point.
    Jacobian {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
        /// Tolerance for the block deviations.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Relative singular value threshold for the numerical rank.
        #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
        rank_tol: f64,
    },
    /// List bundled examples, or print one.
    Corpus { name: Option<String> },
}

#[derive(Args, Debug)]
struct VerdictArgs {
    file: String,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    bound: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Require the symbolic rank (error if the dimension exceeds the threshold).
    #[arg(long)]
    symbolic: bool,
    #[arg(long)]
    assume_exponential: bool,
    #[arg(long)]
    json: bool,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        Failure {
            code: e.exit_code(),
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

fn load(file: &str) -> Result<ProblemFile, Failure> {
    let (label, source) = if let Some(name) = file.strip_prefix("corpus:") {
        let e = corpus::get(name).ok_or_else(|| input_error(format!("no bundled example named `{name}`")))?;
        (e.file.to_string(), e.source.to_string())
    } else {
        let path = PathBuf::from(file);
        let text = std::fs::read_to_string(&path).map_err(|e| input_error(format!("cannot read {file}: {e}")))?;
        (file.to_string(), text)
    };
    parse(&source).map_err(|e| input_error(format!("{label}:{}:{}: {e}", e.line, e.column)))
}

fn datum(p: &ProblemFile) -> Result<MonomialDatum, Failure> {
    let violations = p.algebra.validate();
    if !violations.is_empty() {
        return Err(AnalysisError::InvalidAlgebra(violations.iter().map(|v| v.describe(&p.algebra)).collect()).into());
    }
    MonomialDatum::new(&p.algebra, &p.generators, &p.functional).map_err(|e| AnalysisError::from(e).into())
}

/// Accepts `INT`, `INT/POSINT` or a plain decimal such as `-0.25`.
fn parse_coordinate(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some(q) = parse_rational(s) {
        return Some(q);
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (int_part, frac) = body.split_once('.')?;
    if int_part.is_empty() && frac.is_empty() {
        return None;
    }
    let digits = format!("{int_part}{frac}");
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let num = parse_rational(&digits)?;
    let den = Rational::from_integer(num_bigint::BigInt::from(10).pow(frac.len() as u32));
    let q = num / den;
    Some(if neg { -q } else { q })
}

fn parse_point(s: &str, expected: usize) -> Result<Vec<Rational>, Failure> {
    let vals: Vec<Rational> = if s.trim().is_empty() {
        Vec::new()
    } else {
        s.split(',')
            .map(|t| parse_coordinate(t).ok_or_else(|| input_error(format!("invalid coordinate `{}`", t.trim()))))
            .collect::<Result<_, _>>()?
    };
    if vals.len() != expected {
        return Err(input_error(format!(
            "point needs {expected} coordinates (n - m), got {}",
            vals.len()
        )));
    }
    Ok(vals)
}

fn seed_from_env() -> Result<Option<u64>, Failure> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| input_error(format!("{SEED_ENV} must be an unsigned integer, got `{v}`"))),
        Err(_) => Ok(None),
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let w = |out: &mut dyn Write, s: &str| {
        out.write_all(s.as_bytes())
            .map_err(|e| input_error(format!("write failed: {e}")))
    };
    match cli.command {
        Command::Validate {
            file,
            assume_exponential,
        } => {
            let p = load(&file)?;
            let d = datum(&p)?;
            let cfg = AnalysisConfig {
                seed: p.config.seed.or(seed_from_env()?).unwrap_or(0),
                exp_samples: p.config.exp_samples.unwrap_or(AnalysisConfig::default().exp_samples),
                assume_exponential,
                ..AnalysisConfig::default()
            };
            let s = checked_structure(&p.algebra, &cfg)?;
            let exp = match s.exponentiality {
                Exponentiality::PassedSampling => "PassedSampling",
                Exponentiality::Skipped => "Skipped",
                Exponentiality::FailedWithWitness(_) => unreachable!(),
            };
            let text = format!(
                "algebra: {}\ndim: {}\nvalid: true\nsolvable: {}\nnilpotent: {}\nunimodular: {}\n\
                 derived_series_dims: {:?}\nlower_central_series_dims: {:?}\nexponentiality: {exp}\n\
                 subalgebra_dim: {}\ncharacter: ok\n",
                p.algebra.name(),
                p.algebra.dim(),
                s.is_solvable,
                s.is_nilpotent,
                s.is_unimodular,
                s.derived_series_dims,
                s.lower_central_series_dims,
                d.m(),
            );
            w(out, &text)
        }
        Command::Verdict(a) => {
            let p = load(&a.file)?;
            let defaults = AnalysisConfig::default();
            let cfg = AnalysisConfig {
                trials: a.trials.or(p.config.trials).unwrap_or(defaults.trials),
                bound: a.bound.or(p.config.bound).unwrap_or(defaults.bound),
                seed: match a.seed.or(p.config.seed) {
                    Some(s) => s,
                    None => seed_from_env()?.unwrap_or(0),
                },
                exp_samples: p.config.exp_samples.unwrap_or(defaults.exp_samples),
                symbolic: if a.symbolic {
                    SymbolicMode::Required
                } else {
                    SymbolicMode::Auto
                },
                symbolic_threshold: p.config.symbolic_threshold.unwrap_or(defaults.symbolic_threshold),
                assume_exponential: a.assume_exponential,
            };
            if cfg.trials == 0 {
                return Err(input_error("--trials must be at least 1".into()));
            }
            let r = full_report(&p.algebra, &p.generators, &p.functional, &cfg)?;
            let text = if a.json { render_json(&r) } else { render_text(&r) };
            w(out, &text)
        }
        Command::Rank { file, point } => {
            let p = load(&file)?;
            let d = datum(&p)?;
            let x = parse_point(&point, d.chart_dim())?;
            let l = d.point_on_variety(&x).map_err(|e| input_error(e.to_string()))?;
            let r = stabilizer_report(&d, &l).map_err(|e| input_error(e.to_string()))?;
            let basis = p.algebra.basis_names();
            let span = |vs: &[crate::rational::VectorQ]| {
                let parts: Vec<String> = vs.iter().map(|v| format_combination(v, basis)).collect();
                format!("[{}]", parts.join("; "))
            };
            let text = format!(
                "point: {}\nchart: {}\nrank_M: {}\ndim_H_orbit: {}\nh_stab: {}\ndim_G_orbit: {}\ng_stab: {}\nfree: {}\n",
                r.point,
                crate::rational::VectorQ(x),
                r.rank_m,
                r.dim_h_orbit,
                span(&r.h_stab_basis),
                r.dim_g_orbit,
                span(&r.g_stab_basis),
                r.dim_h_orbit == d.m(),
            );
            w(out, &text)
        }
        Command::Jacobian {
            file,
            point,
            step,
            tol,
            rank_tol,
        } => {
            if [step, tol, rank_tol].iter().any(|v| v.is_nan() || *v <= 0.0) {
                return Err(input_error("--step, --tol and --rank-tol must be positive".into()));
            }
            let p = load(&file)?;
            let d = datum(&p)?;
            let x = parse_point(&point, d.chart_dim())?;
            let r = fd_jacobian(&d, &x, step, rank_tol).map_err(|e| input_error(e.to_string()))?;
            let ok = r.max_dev_topleft < tol
                && r.max_dev_topright < tol
                && r.max_dev_bottomright < tol
                && r.numerical_rank_j == r.expected_rank;
            let mut text = format!(
                "chart: {}\nstep: {step:e}\nrows: {}\ncols: {}\nmax_dev_topleft: {:e}\nmax_dev_topright: {:e}\n\
                 max_dev_bottomright: {:e}\nrank_M: {}\nnumerical_rank_J: {}\nexpected_rank: {}\nconsistent: {ok}\n",
                crate::rational::VectorQ(x),
                r.j.nrows(),
                r.j.ncols(),
                r.max_dev_topleft,
                r.max_dev_topright,
                r.max_dev_bottomright,
                r.rank_m,
                r.numerical_rank_j,
                r.expected_rank,
            );
            for i in 0..r.j.nrows() {
                let row: Vec<String> = r.j.row(i).iter().map(|v| format!("{v:.9}")).collect();
                text.push_str(&format!("J[{i}]: {}\n", row.join(" ")));
            }
            w(out, &text)
        }
        Command::Corpus { name: None } => {
            let text: String = corpus::entries()
                .iter()
                .map(|e| format!("{:<16} {}\n", e.name, e.description()))
                .collect();
            w(out, &text)
        }
        Command::Corpus { name: Some(name) } => {
            let e = corpus::get(&name).ok_or_else(|| input_error(format!("no bundled example named `{name}`")))?;
            w(out, e.source)
        }
    }
}

/// Runs the tool on `argv` (including the program name). Returns the exit code.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = target.write_all(rendered.as_bytes());
            return code;
        }
    };
    match run(cli, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

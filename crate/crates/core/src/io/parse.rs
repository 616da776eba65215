//! Line-oriented problem file format.
//!
//! ```text
//! # comment
//! algebra h3
//! dim 3
//! basis X Y Z
//! bracket X Y = Z            # omitted pairs are zero
//! subalgebra Y; Z            # optional, generators separated by ';'
//! functional 0, 1            # optional, one value per generator
//! config trials 50           # optional overrides
//! ```
//!
//! Terms are `RATIONAL*ID` or a bare `ID`, joined by `+`. Rationals are
//! `INT` or `INT/POSINT`.

use std::fmt;

use num_traits::Zero;

use crate::lie_core::LieAlgebra;
use crate::rational::{parse_rational, Rational, VectorQ};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConfigOverrides {
    pub trials: Option<usize>,
    pub bound: Option<u64>,
    pub seed: Option<u64>,
    pub exp_samples: Option<usize>,
    pub symbolic_threshold: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub algebra: LieAlgebra,
    /// Generators of the subalgebra, empty for the trivial subalgebra.
    pub generators: Vec<VectorQ>,
    /// `f(Y_j)`; all zero when the file has no functional line.
    pub functional: Vec<Rational>,
    pub config: ConfigOverrides,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Expected { expected: String, found: String },
    UnknownIdentifier(String),
    DuplicateBasisName(String),
    DuplicateBracket(String, String),
    SelfBracket(String),
    DimensionMismatch { declared: usize, found: usize },
    FunctionalLength { expected: usize, found: usize },
    UnknownConfigKey(String),
    InvalidNumber(String),
}

/// Error with 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Expected { expected, found } => write!(f, "expected {expected}, found {found}"),
            ParseErrorKind::UnknownIdentifier(id) => write!(f, "unknown identifier `{id}`"),
            ParseErrorKind::DuplicateBasisName(id) => write!(f, "basis name `{id}` repeated"),
            ParseErrorKind::DuplicateBracket(a, b) => write!(f, "bracket of ({a}, {b}) given twice"),
            ParseErrorKind::SelfBracket(a) => {
                write!(f, "bracket of `{a}` with itself must be omitted (it is zero)")
            }
            ParseErrorKind::DimensionMismatch { declared, found } => {
                write!(f, "dim is {declared} but basis has {found} names")
            }
            ParseErrorKind::FunctionalLength { expected, found } => {
                write!(
                    f,
                    "functional needs {expected} values (one per generator), found {found}"
                )
            }
            ParseErrorKind::UnknownConfigKey(k) => write!(
                f,
                "unknown config key `{k}` (expected trials, bound, seed, exp_samples or symbolic_threshold)"
            ),
            ParseErrorKind::InvalidNumber(s) => write!(f, "invalid number `{s}`"),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    Sym(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(s) => format!("number `{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
        }
    }
}

struct Line<'a> {
    no: usize,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
    text: &'a str,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(no: usize, text: &str) -> Result<Line<'_>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
        } else if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            toks.push((col, Tok::Ident(chars[start..i].iter().collect())));
        } else if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '/' {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            toks.push((col, Tok::Number(chars[start..i].iter().collect())));
        } else if "=+*;,".contains(c) {
            toks.push((col, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError {
                line: no,
                column: col,
                kind: ParseErrorKind::Expected {
                    expected: "identifier, number or one of = + * ; ,".into(),
                    found: format!("`{c}`"),
                },
            });
        }
    }
    let end_col = chars.iter().position(|&c| c == '#').unwrap_or(chars.len()) + 1;
    Ok(Line {
        no,
        toks,
        pos: 0,
        end_col,
        text,
    })
}

impl Line<'_> {
    fn err(&self, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.no,
            column,
            kind,
        }
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn expected(&self, what: &str) -> ParseError {
        let found = self.peek().map_or("end of line".to_string(), Tok::describe);
        self.err(
            self.col(),
            ParseErrorKind::Expected {
                expected: what.into(),
                found,
            },
        )
    }

    fn ident(&mut self, what: &str) -> Result<(usize, String), ParseError> {
        match self.toks.get(self.pos) {
            Some((c, Tok::Ident(s))) => {
                self.pos += 1;
                Ok((*c, s.clone()))
            }
            _ => Err(self.expected(what)),
        }
    }

    fn number(&mut self, what: &str) -> Result<(usize, String), ParseError> {
        match self.toks.get(self.pos) {
            Some((c, Tok::Number(s))) => {
                self.pos += 1;
                Ok((*c, s.clone()))
            }
            _ => Err(self.expected(what)),
        }
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let (c, s) = self.number("rational number")?;
        parse_rational(&s).ok_or_else(|| self.err(c, ParseErrorKind::InvalidNumber(s)))
    }

    fn unsigned<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, ParseError> {
        let (c, s) = self.number(what)?;
        s.parse().map_err(|_| self.err(c, ParseErrorKind::InvalidNumber(s)))
    }

    fn sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.expected(&format!("`{c}`")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            return Err(self.expected("end of line"));
        }
        Ok(())
    }

    fn keyword(&self) -> Option<&str> {
        match self.toks.first() {
            Some((_, Tok::Ident(s))) => Some(s.as_str()),
            _ => None,
        }
    }

    /// `term ("+" term)*` with `term := RATIONAL "*" ID | ID`.
    fn linear_combination(&mut self, basis: &[String]) -> Result<VectorQ, ParseError> {
        let mut v = VectorQ::zeros(basis.len());
        loop {
            let coeff = if matches!(self.peek(), Some(Tok::Number(_))) {
                let q = self.rational()?;
                self.sym('*')?;
                q
            } else {
                Rational::from_integer(1.into())
            };
            let (c, id) = self.ident("basis identifier")?;
            let k = basis
                .iter()
                .position(|b| *b == id)
                .ok_or_else(|| self.err(c, ParseErrorKind::UnknownIdentifier(id)))?;
            v[k] += coeff;
            if !self.eat('+') {
                return Ok(v);
            }
        }
    }
}

fn first_col(text: &str) -> usize {
    text.chars().position(|c| !c.is_whitespace()).unwrap_or(0) + 1
}

pub fn parse(source: &str) -> Result<ProblemFile, ParseError> {
    let mut lines = Vec::new();
    for (i, text) in source.lines().enumerate() {
        let line = lex(i + 1, text)?;
        if !line.toks.is_empty() {
            lines.push(line);
        }
    }
    let total = source.lines().count();
    let mut it = lines.into_iter();
    let eof = |what: &str| ParseError {
        line: total + 1,
        column: 1,
        kind: ParseErrorKind::Expected {
            expected: what.into(),
            found: "end of file".into(),
        },
    };

    // algebra NAME: the name is the remaining text of the line.
    let mut l = it.next().ok_or_else(|| eof("`algebra`"))?;
    if l.keyword() != Some("algebra") {
        return Err(l.expected("`algebra`"));
    }
    let body = l.text.split('#').next().unwrap_or("");
    let mut words = body.split_whitespace();
    words.next();
    let name = words.next().ok_or_else(|| {
        l.pos = l.toks.len();
        l.expected("algebra name")
    })?;
    if let Some(extra) = words.next() {
        let col = body.find(extra).map_or(1, |p| body[..p].chars().count() + 1);
        return Err(l.err(
            col,
            ParseErrorKind::Expected {
                expected: "end of line".into(),
                found: format!("`{extra}`"),
            },
        ));
    }
    let name = name.to_string();

    let mut l = it.next().ok_or_else(|| eof("`dim`"))?;
    if l.keyword() != Some("dim") {
        return Err(l.expected("`dim`"));
    }
    l.pos = 1;
    let dim: usize = l.unsigned("dimension")?;
    l.finish()?;

    let mut l = it.next().ok_or_else(|| eof("`basis`"))?;
    if l.keyword() != Some("basis") {
        return Err(l.expected("`basis`"));
    }
    l.pos = 1;
    let mut basis: Vec<String> = Vec::new();
    while l.pos < l.toks.len() {
        let (c, id) = l.ident("basis identifier")?;
        if basis.contains(&id) {
            return Err(l.err(c, ParseErrorKind::DuplicateBasisName(id)));
        }
        basis.push(id);
    }
    if basis.len() != dim {
        return Err(l.err(
            first_col(l.text),
            ParseErrorKind::DimensionMismatch {
                declared: dim,
                found: basis.len(),
            },
        ));
    }
    let mut algebra = LieAlgebra::abelian(&name, &basis.iter().map(String::as_str).collect::<Vec<_>>())
        .expect("names checked distinct");
    let mut seen: Vec<(usize, usize)> = Vec::new();

    let mut generators = Vec::new();
    let mut functional: Option<Vec<Rational>> = None;
    let mut config = ConfigOverrides::default();
    // 0: brackets, 1: after subalgebra, 2: after functional, 3: config
    let mut stage = 0;

    for mut l in it {
        let kw = l.keyword().map(str::to_string);
        l.pos = 1;
        match kw.as_deref() {
            Some("bracket") if stage == 0 => {
                let (ca, a) = l.ident("basis identifier")?;
                let ia = basis
                    .iter()
                    .position(|b| *b == a)
                    .ok_or_else(|| l.err(ca, ParseErrorKind::UnknownIdentifier(a.clone())))?;
                let (cb, b) = l.ident("basis identifier")?;
                let ib = basis
                    .iter()
                    .position(|x| *x == b)
                    .ok_or_else(|| l.err(cb, ParseErrorKind::UnknownIdentifier(b.clone())))?;
                if ia == ib {
                    return Err(l.err(cb, ParseErrorKind::SelfBracket(a)));
                }
                let key = (ia.min(ib), ia.max(ib));
                if seen.contains(&key) {
                    return Err(l.err(ca, ParseErrorKind::DuplicateBracket(a, b)));
                }
                seen.push(key);
                l.sym('=')?;
                let v = l.linear_combination(&basis)?;
                l.finish()?;
                algebra.set_bracket(ia, ib, &v);
            }
            Some("subalgebra") if stage == 0 => {
                loop {
                    generators.push(l.linear_combination(&basis)?);
                    if !l.eat(';') {
                        break;
                    }
                }
                l.finish()?;
                stage = 1;
            }
            Some("functional") if stage <= 1 => {
                let start = l.col();
                let mut vals = vec![l.rational()?];
                while l.eat(',') {
                    vals.push(l.rational()?);
                }
                l.finish()?;
                if vals.len() != generators.len() {
                    return Err(l.err(
                        start,
                        ParseErrorKind::FunctionalLength {
                            expected: generators.len(),
                            found: vals.len(),
                        },
                    ));
                }
                functional = Some(vals);
                stage = 2;
            }
            Some("config") => {
                let (ck, key) = l.ident("config key")?;
                match key.as_str() {
                    "trials" => config.trials = Some(l.unsigned("integer")?),
                    "bound" => config.bound = Some(l.unsigned("integer")?),
                    "seed" => config.seed = Some(l.unsigned("integer")?),
                    "exp_samples" => config.exp_samples = Some(l.unsigned("integer")?),
                    "symbolic_threshold" => config.symbolic_threshold = Some(l.unsigned("integer")?),
                    _ => return Err(l.err(ck, ParseErrorKind::UnknownConfigKey(key))),
                }
                l.finish()?;
                stage = 3;
            }
            _ => {
                l.pos = 0;
                let expected = match stage {
                    0 => "`bracket`, `subalgebra`, `functional` or `config`",
                    1 => "`functional` or `config`",
                    _ => "`config`",
                };
                return Err(l.expected(expected));
            }
        }
    }

    let functional = functional.unwrap_or_else(|| vec![Rational::zero(); generators.len()]);
    Ok(ProblemFile {
        algebra,
        generators,
        functional,
        config,
    })
}

/// `q*ID + ...` in basis order; coefficient 1 is written as the bare name.
pub fn format_combination(v: &VectorQ, basis: &[String]) -> String {
    let terms: Vec<String> = v
        .iter()
        .zip(basis)
        .filter(|(q, _)| !q.is_zero())
        .map(|(q, b)| {
            if *q == Rational::from_integer(1.into()) {
                b.clone()
            } else {
                format!("{q}*{b}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Normalised text form; `parse(&serialize(p)) == p` for any parsed `p`.
pub fn serialize(p: &ProblemFile) -> String {
    let alg = &p.algebra;
    let basis = alg.basis_names();
    let mut out = String::new();
    out.push_str(&format!("algebra {}\n", alg.name()));
    out.push_str(&format!("dim {}\n", alg.dim()));
    out.push_str(&format!("basis {}\n", basis.join(" ")));
    for i in 0..alg.dim() {
        for j in i + 1..alg.dim() {
            let b = alg.basis_bracket(i, j);
            if !b.is_zero() {
                out.push_str(&format!(
                    "bracket {} {} = {}\n",
                    basis[i],
                    basis[j],
                    format_combination(&b, basis)
                ));
            }
        }
    }
    if !p.generators.is_empty() {
        let gens: Vec<String> = p.generators.iter().map(|g| format_combination(g, basis)).collect();
        out.push_str(&format!("subalgebra {}\n", gens.join("; ")));
        let vals: Vec<String> = p.functional.iter().map(|q| q.to_string()).collect();
        out.push_str(&format!("functional {}\n", vals.join(", ")));
    }
    let c = &p.config;
    let entries = [
        ("trials", c.trials.map(|v| v as u64)),
        ("bound", c.bound),
        ("seed", c.seed),
        ("exp_samples", c.exp_samples.map(|v| v as u64)),
        ("symbolic_threshold", c.symbolic_threshold.map(|v| v as u64)),
    ];
    for (k, v) in entries {
        if let Some(v) = v {
            out.push_str(&format!("config {k} {v}\n"));
        }
    }
    out
}

//! Run configuration: a flat sectioned key-value text format plus the
//! resolved settings shared by every subcommand.
//!
//! ```text
//! [model]
//! name = ho            # or inline: dims = 1 followed by V-term lines
//! # V = 1 2            # coefficient, then one exponent per dimension
//!
//! [trial]
//! dims = 1
//! quad = 2/5           # per-dimension Gaussian exponents a_d
//! lin = 0              # per-dimension linear exponents
//! poly = 1 2           # term: coefficient, then exponents
//! poly = -1/2 0
//!
//! [run]
//! N = 1..3
//! t = 0:3:121
//! format = csv
//! precision = double   # or ext:50
//! seed = 42
//! ```

use num::BigRational;
use std::str::FromStr;
use thiserror::Error;

use crate::catalog;
use crate::poly::Poly;
use crate::state::{GaussianPolyState, PolynomialHamiltonian};

#[derive(Debug, Error, PartialEq)]
#[error("config error at line {line}, field `{field}`: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub field: String,
    pub message: String,
}

fn err(line: usize, field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError {
        line,
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// The six subcommands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmdKind {
    Moments,
    Cmx,
    Zfit,
    Correlation,
    Reference,
    Scan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Double,
    /// decimal digits carried by the exact-rational solve
    Extended(u32),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TGrid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl TGrid {
    pub fn points(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.start + step * i as f64).collect()
    }
}

/// Model/trial source: a catalog pair by name, or inline definitions.
#[derive(Clone, Debug)]
pub enum SystemSpec {
    Catalog(String),
    Inline {
        hamiltonian: PolynomialHamiltonian,
        trial: GaussianPolyState,
    },
}

/// Everything a command needs to run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub system: SystemSpec,
    pub n_lo: usize,
    pub n_hi: usize,
    pub j_max: usize,
    pub t_grid: Option<TGrid>,
    pub format: OutputFormat,
    pub precision: Precision,
    pub seed: u64,
    pub out: Option<String>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n_lo < 1 || self.n_hi < self.n_lo {
            return Err(err(0, "N", "need N >= 1 and a non-empty range"));
        }
        if let Some(g) = &self.t_grid {
            if g.count < 2 || g.stop <= g.start {
                return Err(err(0, "t", "grid needs count >= 2 and stop > start"));
            }
        }
        if self.j_max < 1 {
            return Err(err(0, "J", "need J >= 1"));
        }
        Ok(())
    }

    pub fn is_range(&self) -> bool {
        self.n_hi > self.n_lo
    }
}

/// Resolved model/trial pair plus the attached references.
pub struct ResolvedSystem {
    pub name: String,
    pub description: String,
    pub hamiltonian: PolynomialHamiltonian,
    pub trial: GaussianPolyState,
    pub exact_e: Option<fn(f64) -> f64>,
    pub exact_c2: Option<fn(f64) -> f64>,
    pub oracle_m_start: usize,
}

impl SystemSpec {
    pub fn resolve(&self) -> Result<ResolvedSystem, ConfigError> {
        match self {
            SystemSpec::Catalog(name) => {
                let e = catalog::find(name).ok_or_else(|| {
                    err(
                        0,
                        "model",
                        format!(
                            "unknown catalog model `{name}`; available: {}",
                            catalog::catalog()
                                .iter()
                                .map(|e| e.name)
                                .collect::<Vec<_>>()
                                .join(", ")
                        ),
                    )
                })?;
                Ok(ResolvedSystem {
                    name: e.name.into(),
                    description: e.description.into(),
                    hamiltonian: e.hamiltonian,
                    trial: e.trial,
                    exact_e: e.exact_e,
                    exact_c2: e.exact_c2,
                    oracle_m_start: e.oracle_m_start,
                })
            }
            SystemSpec::Inline { hamiltonian, trial } => Ok(ResolvedSystem {
                name: "inline".into(),
                description: format!("V = {}", hamiltonian.potential()),
                hamiltonian: hamiltonian.clone(),
                trial: trial.clone(),
                exact_e: None,
                exact_c2: None,
                oracle_m_start: if hamiltonian.dims() == 1 { 16 } else { 12 },
            }),
        }
    }
}

pub fn parse_rational(s: &str, line: usize, field: &str) -> Result<BigRational, ConfigError> {
    BigRational::from_str(s.trim())
        .map_err(|e| err(line, field, format!("cannot parse rational `{s}`: {e}")))
}

pub fn parse_n_range(s: &str) -> Result<(usize, usize), ConfigError> {
    let s = s.trim();
    let parse_one = |tok: &str| {
        tok.trim()
            .parse::<usize>()
            .map_err(|_| err(0, "N", format!("cannot parse order `{tok}`")))
    };
    if let Some((a, b)) = s.split_once("..") {
        Ok((parse_one(a)?, parse_one(b)?))
    } else {
        let n = parse_one(s)?;
        Ok((n, n))
    }
}

pub fn parse_t_grid(s: &str) -> Result<TGrid, ConfigError> {
    let parts: Vec<&str> = s.trim().split(':').collect();
    if parts.len() != 3 {
        return Err(err(0, "t", format!("expected START:STOP:COUNT, got `{s}`")));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| err(0, "t", format!("bad start `{}`", parts[0])))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| err(0, "t", format!("bad stop `{}`", parts[1])))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| err(0, "t", format!("bad count `{}`", parts[2])))?;
    Ok(TGrid { start, stop, count })
}

pub fn parse_precision(s: &str) -> Result<Precision, ConfigError> {
    let s = s.trim();
    if s == "double" {
        return Ok(Precision::Double);
    }
    if let Some(d) = s.strip_prefix("ext:") {
        let digits: u32 = d
            .parse()
            .map_err(|_| err(0, "precision", format!("bad digit count `{d}`")))?;
        if !(10..=200).contains(&digits) {
            return Err(err(0, "precision", "extended digits must be in 10..=200"));
        }
        return Ok(Precision::Extended(digits));
    }
    Err(err(
        0,
        "precision",
        format!("expected `double` or `ext:DIGITS`, got `{s}`"),
    ))
}

pub fn parse_format(s: &str) -> Result<OutputFormat, ConfigError> {
    match s.trim() {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        other => Err(err(0, "format", format!("expected csv or json, got `{other}`"))),
    }
}

/// Values read from a config file; unset fields fall back to CLI flags or
/// defaults.
#[derive(Default, Debug)]
pub struct ConfigFile {
    pub model_name: Option<String>,
    pub inline_model: Option<PolynomialHamiltonian>,
    pub inline_trial: Option<GaussianPolyState>,
    pub n: Option<(usize, usize)>,
    pub j_max: Option<usize>,
    pub t_grid: Option<TGrid>,
    pub format: Option<OutputFormat>,
    pub precision: Option<Precision>,
    pub seed: Option<u64>,
    pub out: Option<String>,
}

fn parse_term_line(
    val: &str,
    dims: usize,
    line: usize,
    field: &str,
) -> Result<(Vec<u32>, BigRational), ConfigError> {
    let toks: Vec<&str> = val.split_whitespace().collect();
    if toks.len() != dims + 1 {
        return Err(err(
            line,
            field,
            format!(
                "term needs a coefficient plus {dims} exponent(s), got {} token(s)",
                toks.len()
            ),
        ));
    }
    let coeff = parse_rational(toks[0], line, field)?;
    let mut exps = Vec::with_capacity(dims);
    for t in &toks[1..] {
        exps.push(
            t.parse::<u32>()
                .map_err(|_| err(line, field, format!("bad exponent `{t}`")))?,
        );
    }
    Ok((exps, coeff))
}

fn parse_rational_list(
    val: &str,
    dims: usize,
    line: usize,
    field: &str,
) -> Result<Vec<BigRational>, ConfigError> {
    let toks: Vec<&str> = val.split_whitespace().collect();
    if toks.len() != dims {
        return Err(err(
            line,
            field,
            format!("expected {dims} value(s), got {}", toks.len()),
        ));
    }
    toks.iter().map(|t| parse_rational(t, line, field)).collect()
}

/// Parse the sectioned key-value text. Every parse failure names the line and
/// the offending field.
pub fn parse_config(text: &str) -> Result<ConfigFile, ConfigError> {
    let mut cf = ConfigFile::default();
    let mut section = String::new();
    let mut model_dims: Option<usize> = None;
    let mut trial_dims: Option<usize> = None;
    let mut v_terms: Vec<(Vec<u32>, BigRational)> = Vec::new();
    let mut poly_terms: Vec<(Vec<u32>, BigRational)> = Vec::new();
    let mut quad: Option<Vec<BigRational>> = None;
    let mut lin: Option<Vec<BigRational>> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') && line.ends_with(']') {
            section = line[1..line.len() - 1].trim().to_string();
            if !matches!(section.as_str(), "model" | "trial" | "run") {
                return Err(err(lineno, "section", format!("unknown section `[{section}]`")));
            }
            continue;
        }
        let (key, val) = line
            .split_once('=')
            .ok_or_else(|| err(lineno, "line", format!("expected `key = value`, got `{line}`")))?;
        let key = key.trim();
        let val = val.trim();
        match (section.as_str(), key) {
            ("model", "name") => cf.model_name = Some(val.to_string()),
            ("model", "dims") => {
                model_dims = Some(val.parse().map_err(|_| {
                    err(lineno, "model.dims", format!("bad dimension count `{val}`"))
                })?)
            }
            ("model", "V") => {
                let dims =
                    model_dims.ok_or_else(|| err(lineno, "model.V", "set `dims` before V terms"))?;
                v_terms.push(parse_term_line(val, dims, lineno, "model.V")?);
            }
            ("trial", "dims") => {
                trial_dims = Some(val.parse().map_err(|_| {
                    err(lineno, "trial.dims", format!("bad dimension count `{val}`"))
                })?)
            }
            ("trial", "quad") => {
                let dims = trial_dims.ok_or_else(|| err(lineno, "trial.quad", "set `dims` first"))?;
                quad = Some(parse_rational_list(val, dims, lineno, "trial.quad")?);
            }
            ("trial", "lin") => {
                let dims = trial_dims.ok_or_else(|| err(lineno, "trial.lin", "set `dims` first"))?;
                lin = Some(parse_rational_list(val, dims, lineno, "trial.lin")?);
            }
            ("trial", "poly") => {
                let dims = trial_dims.ok_or_else(|| err(lineno, "trial.poly", "set `dims` first"))?;
                poly_terms.push(parse_term_line(val, dims, lineno, "trial.poly")?);
            }
            ("run", "N") => {
                cf.n = Some(parse_n_range(val).map_err(|mut e| {
                    e.line = lineno;
                    e
                })?)
            }
            ("run", "J") => {
                cf.j_max = Some(
                    val.parse()
                        .map_err(|_| err(lineno, "run.J", format!("bad order `{val}`")))?,
                )
            }
            ("run", "t") => {
                cf.t_grid = Some(parse_t_grid(val).map_err(|mut e| {
                    e.line = lineno;
                    e
                })?)
            }
            ("run", "format") => {
                cf.format = Some(parse_format(val).map_err(|mut e| {
                    e.line = lineno;
                    e
                })?)
            }
            ("run", "precision") => {
                cf.precision = Some(parse_precision(val).map_err(|mut e| {
                    e.line = lineno;
                    e
                })?)
            }
            ("run", "seed") => {
                cf.seed = Some(
                    val.parse()
                        .map_err(|_| err(lineno, "run.seed", format!("bad seed `{val}`")))?,
                )
            }
            ("run", "out") => cf.out = Some(val.to_string()),
            (sec, k) => {
                return Err(err(
                    lineno,
                    k,
                    if sec.is_empty() {
                        format!("key `{k}` before any [section]")
                    } else {
                        format!("unknown key `{k}` in section [{sec}]")
                    },
                ))
            }
        }
    }

    if let Some(dims) = model_dims {
        if v_terms.is_empty() {
            return Err(err(0, "model.V", "inline model declares dims but no V terms"));
        }
        cf.inline_model = Some(PolynomialHamiltonian::new(Poly::from_terms(dims, v_terms)));
    }
    if let Some(dims) = trial_dims {
        let q = quad.ok_or_else(|| err(0, "trial.quad", "trial needs quad exponents"))?;
        let l = lin.unwrap_or_else(|| vec![num::Zero::zero(); dims]);
        let p = if poly_terms.is_empty() {
            Poly::constant(dims, num::One::one())
        } else {
            Poly::from_terms(dims, poly_terms)
        };
        let trial = GaussianPolyState::new(p, q, l).map_err(|e| err(0, "trial", e.to_string()))?;
        cf.inline_trial = Some(trial);
    }
    Ok(cf)
}

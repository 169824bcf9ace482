//! Report generation for the CLI subcommands: CSV curve tables (first column
//! t or tau, one named series per column, 12 significant digits) and JSON
//! parameter records. Output is deterministic: same config and seed, same
//! bytes.

use serde::Serialize;

use crate::cmx::{
    cmx_from_connected, correlation_squared, eval_en, eval_un, order_scan, zn_from_moments,
    CmxApproximant, ZnApproximant,
};
use crate::config::{CmdKind, ConfigError, OutputFormat, Precision, ResolvedSystem, RunConfig, TGrid};
use crate::moments::{connected_moments, ConnectedMoments, MomentSequence};
use crate::prony::exact::{rational_to_decimal, solve_exact, CRat};
use crate::prony::LimitBehavior;
use crate::reference::{diagonalize, SpectralReference};
use crate::scalar::ratio_to_f64;

#[derive(Debug)]
pub enum CmdError {
    /// configuration problems; the CLI exits with status 2
    Config(ConfigError),
    /// solver failure outside range mode; the CLI exits with status 3
    Solver(String),
}

impl From<ConfigError> for CmdError {
    fn from(e: ConfigError) -> Self {
        CmdError::Config(e)
    }
}

impl std::fmt::Display for CmdError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CmdError::Config(e) => write!(f, "{e}"),
            CmdError::Solver(m) => write!(f, "solver failure: {m}"),
        }
    }
}

/// One output file, ready to write.
pub struct Artifact {
    pub filename: String,
    pub bytes: Vec<u8>,
}

pub struct CmdOutput {
    pub artifacts: Vec<Artifact>,
    pub warnings: Vec<String>,
}

/// 12 significant digits, scientific; the CSV number convention.
pub fn fmt12(x: f64) -> String {
    format!("{:.11e}", x)
}

fn base_name(cfg: &RunConfig, default: &str) -> String {
    match &cfg.out {
        Some(p) => {
            let p = p.as_str();
            for suffix in [".csv", ".json"] {
                if let Some(stripped) = p.strip_suffix(suffix) {
                    return stripped.to_string();
                }
            }
            p.to_string()
        }
        None => default.to_string(),
    }
}

fn csv(header: &[String], rows: &[Vec<String>]) -> Vec<u8> {
    let mut s = String::new();
    s.push_str(&header.join(","));
    s.push('\n');
    for row in rows {
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s.into_bytes()
}

#[derive(Serialize)]
struct Meta {
    system: String,
    description: String,
    seed: u64,
    precision: String,
}

fn meta(cfg: &RunConfig, sys: &ResolvedSystem) -> Meta {
    Meta {
        system: sys.name.clone(),
        description: sys.description.clone(),
        seed: cfg.seed,
        precision: match cfg.precision {
            Precision::Double => "double".into(),
            Precision::Extended(d) => format!("ext:{d}"),
        },
    }
}

#[derive(Serialize)]
struct ComplexJson {
    re: f64,
    im: f64,
}

impl From<num_complex::Complex64> for ComplexJson {
    fn from(z: num_complex::Complex64) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
struct DiagnosticsJson {
    all_real: bool,
    all_positive: bool,
    negative_real_roots: Vec<f64>,
    limit_behavior: &'static str,
}

fn limit_name(l: LimitBehavior) -> &'static str {
    match l {
        LimitBehavior::Converges => "converges",
        LimitBehavior::DivergesMinus => "diverges_minus",
        LimitBehavior::DivergesPlus => "diverges_plus",
        LimitBehavior::Oscillates => "oscillates",
    }
}

#[derive(Serialize)]
struct ExtComplex {
    re: String,
    im: String,
}

#[derive(Serialize)]
struct ExtendedRecord {
    digits: u32,
    a0: Option<String>,
    exponents: Vec<ExtComplex>,
    amplitudes: Vec<ExtComplex>,
    residual: String,
}

fn ext_complex(z: &CRat, digits: u32) -> ExtComplex {
    ExtComplex {
        re: rational_to_decimal(&z.re, digits),
        im: rational_to_decimal(&z.im, digits),
    }
}

struct Ctx {
    sys: ResolvedSystem,
    moments: MomentSequence,
    connected: ConnectedMoments,
}

fn prepare(cfg: &RunConfig, j_needed: usize) -> Result<(Ctx, Vec<String>), CmdError> {
    cfg.validate()?;
    let sys = cfg.system.resolve()?;
    let mut warnings = Vec::new();
    if !sys.hamiltonian.looks_bounded_below() {
        warnings.push("potential does not look bounded below on the check grid".into());
    }
    let moments = MomentSequence::compute(&sys.hamiltonian, &sys.trial, j_needed)
        .map_err(|e| CmdError::Solver(e.to_string()))?
        .with_ids(&sys.name, &sys.description);
    if !moments.hankel_is_psd() {
        warnings.push("moment Hankel matrix is not positive semidefinite".into());
    }
    let connected = connected_moments(&moments);
    Ok((
        Ctx {
            sys,
            moments,
            connected,
        },
        warnings,
    ))
}

fn oracle_for(ctx: &Ctx) -> Result<SpectralReference, CmdError> {
    diagonalize(&ctx.sys.hamiltonian, &ctx.sys.trial, ctx.sys.oracle_m_start, 1e-9)
        .map_err(|e| CmdError::Solver(e.to_string()))
}

// ---------------------------------------------------------------- moments

#[derive(Serialize)]
struct MomentEntry {
    j: usize,
    rational: String,
    decimal: f64,
}

#[derive(Serialize)]
struct MomentsJson {
    meta: Meta,
    j_max: usize,
    mu: Vec<MomentEntry>,
    connected: Vec<MomentEntry>,
}

pub fn cmd_moments(cfg: &RunConfig) -> Result<CmdOutput, CmdError> {
    let (ctx, warnings) = prepare(cfg, cfg.j_max)?;
    let base = base_name(cfg, "moments");
    let mu_entries: Vec<MomentEntry> = ctx
        .moments
        .mu()
        .iter()
        .enumerate()
        .map(|(j, r)| MomentEntry {
            j,
            rational: r.to_string(),
            decimal: ratio_to_f64(r),
        })
        .collect();
    let i_entries: Vec<MomentEntry> = ctx
        .connected
        .values()
        .iter()
        .enumerate()
        .map(|(k, r)| MomentEntry {
            j: k + 1,
            rational: r.to_string(),
            decimal: ratio_to_f64(r),
        })
        .collect();
    let artifact = match cfg.format {
        OutputFormat::Json => {
            let doc = MomentsJson {
                meta: meta(cfg, &ctx.sys),
                j_max: cfg.j_max,
                mu: mu_entries,
                connected: i_entries,
            };
            Artifact {
                filename: format!("{base}.json"),
                bytes: to_json(&doc),
            }
        }
        OutputFormat::Csv => {
            let header: Vec<String> = ["j", "mu", "mu_decimal", "I", "I_decimal"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            let rows: Vec<Vec<String>> = (0..=cfg.j_max)
                .map(|j| {
                    let mu = &mu_entries[j];
                    let (i_rat, i_dec) = if j >= 1 {
                        let e = &i_entries[j - 1];
                        (e.rational.clone(), fmt12(e.decimal))
                    } else {
                        (String::new(), String::new())
                    };
                    vec![
                        j.to_string(),
                        mu.rational.clone(),
                        fmt12(mu.decimal),
                        i_rat,
                        i_dec,
                    ]
                })
                .collect();
            Artifact {
                filename: format!("{base}.csv"),
                bytes: csv(&header, &rows),
            }
        }
    };
    Ok(CmdOutput {
        artifacts: vec![artifact],
        warnings,
    })
}

// ---------------------------------------------------------------- cmx

#[derive(Serialize)]
struct CmxRecord {
    n: usize,
    highest_moment_index: usize,
    ok: bool,
    a0: Option<f64>,
    exponents: Option<Vec<ComplexJson>>,
    amplitudes: Option<Vec<ComplexJson>>,
    residual: Option<f64>,
    diagnostics: Option<DiagnosticsJson>,
    hadamard_lower: Option<Vec<f64>>,
    hadamard_upper: Option<Vec<f64>>,
    extended: Option<ExtendedRecord>,
    error: Option<String>,
}

#[derive(Serialize)]
struct CurveJson {
    t: Vec<f64>,
    series: Vec<SeriesJson>,
}

#[derive(Serialize)]
struct SeriesJson {
    name: String,
    values: Vec<f64>,
}


fn cmx_extended(ctx: &Ctx, n: usize, digits: u32) -> Option<ExtendedRecord> {
    let f: Vec<_> = (1..=2 * n)
        .map(|k| ctx.connected.get(k + 1).clone())
        .collect();
    match solve_exact(&f, 0, digits) {
        Ok(sol) => {
            let mut a0 = ctx.connected.get(1).clone();
            for a in &sol.amplitudes {
                a0 -= &a.re;
            }
            Some(ExtendedRecord {
                digits,
                a0: Some(rational_to_decimal(&a0, digits)),
                exponents: sol.exponents.iter().map(|z| ext_complex(z, digits)).collect(),
                amplitudes: sol.amplitudes.iter().map(|z| ext_complex(z, digits)).collect(),
                residual: rational_to_decimal(&sol.residual, digits.min(3)),
            })
        }
        Err(_) => None,
    }
}

fn zn_extended(ctx: &Ctx, n: usize, digits: u32) -> Option<ExtendedRecord> {
    let f: Vec<_> = ctx.moments.mu()[..2 * n].to_vec();
    match solve_exact(&f, -1, digits) {
        Ok(sol) => Some(ExtendedRecord {
            digits,
            a0: None,
            exponents: sol.exponents.iter().map(|z| ext_complex(z, digits)).collect(),
            amplitudes: sol.amplitudes.iter().map(|z| ext_complex(z, digits)).collect(),
            residual: rational_to_decimal(&sol.residual, digits.min(3)),
        }),
        Err(_) => None,
    }
}

fn cmx_record(cfg: &RunConfig, ctx: &Ctx, n: usize) -> (CmxRecord, Option<CmxApproximant>) {
    // the exact-rational route is attempted independently: it is the rescue
    // path for orders the double-precision guard declines
    let extended = match cfg.precision {
        Precision::Extended(d) => cmx_extended(ctx, n, d),
        Precision::Double => None,
    };
    match cmx_from_connected(&ctx.connected, n) {
        Ok(c) => {
            let rec = CmxRecord {
                n,
                highest_moment_index: 2 * n + 1,
                ok: true,
                a0: Some(c.a0),
                exponents: Some(c.exponents.iter().map(|&z| z.into()).collect()),
                amplitudes: Some(c.amplitudes.iter().map(|&z| z.into()).collect()),
                residual: Some(c.residual),
                diagnostics: Some(DiagnosticsJson {
                    all_real: c.diagnostics.all_real,
                    all_positive: c.diagnostics.all_positive,
                    negative_real_roots: c.diagnostics.negative_real_roots.clone(),
                    limit_behavior: limit_name(c.diagnostics.limit_behavior),
                }),
                hadamard_lower: Some(c.hadamard.lower.clone()),
                hadamard_upper: Some(c.hadamard.upper.clone()),
                extended,
                error: None,
            };
            (rec, Some(c))
        }
        Err(e) => (
            CmxRecord {
                n,
                highest_moment_index: 2 * n + 1,
                ok: false,
                a0: None,
                exponents: None,
                amplitudes: None,
                residual: None,
                diagnostics: None,
                hadamard_lower: None,
                hadamard_upper: None,
                extended,
                error: Some(e.to_string()),
            },
            None,
        ),
    }
}

fn default_grid(cfg: &RunConfig) -> TGrid {
    cfg.t_grid.unwrap_or(TGrid {
        start: 0.0,
        stop: 3.0,
        count: 121,
    })
}

pub fn cmd_cmx(cfg: &RunConfig) -> Result<CmdOutput, CmdError> {
    let (ctx, warnings) = prepare(cfg, 2 * cfg.n_hi + 1)?;
    let base = base_name(cfg, "cmx");
    let grid = default_grid(cfg);
    let ts = grid.points();

    let mut records = Vec::new();
    let mut fits: Vec<(usize, CmxApproximant)> = Vec::new();
    for n in cfg.n_lo..=cfg.n_hi {
        let (rec, fit) = cmx_record(cfg, &ctx, n);
        if let Some(e) = &rec.error {
            if !cfg.is_range() {
                return Err(CmdError::Solver(e.clone()));
            }
        }
        if let Some(f) = fit {
            fits.push((n, f));
        }
        records.push(rec);
    }

    // reference column: closed form when available, oracle otherwise
    let reference: Vec<f64> = match ctx.sys.exact_e {
        Some(f) => ts.iter().map(|&t| f(t)).collect(),
        None => {
            let r = oracle_for(&ctx)?;
            ts.iter().map(|&t| r.e(t)).collect()
        }
    };

    let mut series = vec![SeriesJson {
        name: "reference".into(),
        values: reference,
    }];
    for (n, fit) in &fits {
        series.push(SeriesJson {
            name: format!("EN_{n}"),
            values: ts.iter().map(|&t| eval_en(fit, t)).collect(),
        });
    }

    let artifacts = assemble(cfg, &ctx, base, records_to_value(records), ts, series)?;
    Ok(CmdOutput {
        artifacts,
        warnings,
    })
}

fn records_to_value<T: Serialize>(records: T) -> serde_json::Value {
    serde_json::to_value(records).expect("serializable records")
}

fn to_json<T: Serialize>(doc: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(doc).expect("serializable document");
    bytes.push(b'\n');
    bytes
}

#[derive(Serialize)]
struct ParamsJson {
    meta: Meta,
    records: serde_json::Value,
}

#[derive(Serialize)]
struct CombinedJson {
    meta: Meta,
    records: serde_json::Value,
    curve: CurveJson,
}

/// csv format: `<base>.csv` curve table plus `<base>.params.json`;
/// json format: a single `<base>.json` with records and curve embedded.
fn assemble(
    cfg: &RunConfig,
    ctx: &Ctx,
    base: String,
    records: serde_json::Value,
    ts: Vec<f64>,
    series: Vec<SeriesJson>,
) -> Result<Vec<Artifact>, CmdError> {
    match cfg.format {
        OutputFormat::Json => {
            let doc = CombinedJson {
                meta: meta(cfg, &ctx.sys),
                records,
                curve: CurveJson { t: ts, series },
            };
            Ok(vec![Artifact {
                filename: format!("{base}.json"),
                bytes: to_json(&doc),
            }])
        }
        OutputFormat::Csv => {
            let mut header = vec!["t".to_string()];
            header.extend(series.iter().map(|s| s.name.clone()));
            let rows: Vec<Vec<String>> = (0..ts.len())
                .map(|i| {
                    let mut row = vec![fmt12(ts[i])];
                    row.extend(series.iter().map(|s| fmt12(s.values[i])));
                    row
                })
                .collect();
            let params = ParamsJson {
                meta: meta(cfg, &ctx.sys),
                records,
            };
            Ok(vec![
                Artifact {
                    filename: format!("{base}.csv"),
                    bytes: csv(&header, &rows),
                },
                Artifact {
                    filename: format!("{base}.params.json"),
                    bytes: to_json(&params),
                },
            ])
        }
    }
}

// ---------------------------------------------------------------- zfit

#[derive(Serialize)]
struct ZfitRecord {
    n: usize,
    highest_moment_index: usize,
    ok: bool,
    exponents: Option<Vec<f64>>,
    amplitudes: Option<Vec<f64>>,
    residual: Option<f64>,
    warnings: Vec<String>,
    extended: Option<ExtendedRecord>,
    error: Option<String>,
}

fn zfit_record(cfg: &RunConfig, ctx: &Ctx, n: usize) -> (ZfitRecord, Option<ZnApproximant>) {
    let extended = match cfg.precision {
        Precision::Extended(d) => zn_extended(ctx, n, d),
        Precision::Double => None,
    };
    match zn_from_moments(&ctx.moments, n) {
        Ok(z) => {
            let rec = ZfitRecord {
                n,
                highest_moment_index: 2 * n - 1,
                ok: true,
                exponents: Some(z.exponents.clone()),
                amplitudes: Some(z.amplitudes.clone()),
                residual: Some(z.residual),
                warnings: z.warnings.clone(),
                extended,
                error: None,
            };
            (rec, Some(z))
        }
        Err(e) => (
            ZfitRecord {
                n,
                highest_moment_index: 2 * n - 1,
                ok: false,
                exponents: None,
                amplitudes: None,
                residual: None,
                warnings: Vec::new(),
                extended,
                error: Some(e.to_string()),
            },
            None,
        ),
    }
}

pub fn cmd_zfit(cfg: &RunConfig) -> Result<CmdOutput, CmdError> {
    let (ctx, warnings) = prepare(cfg, (2 * cfg.n_hi).max(2))?;
    let base = base_name(cfg, "zfit");
    let grid = default_grid(cfg);
    let ts = grid.points();

    let mut records = Vec::new();
    let mut fits: Vec<(usize, ZnApproximant)> = Vec::new();
    for n in cfg.n_lo..=cfg.n_hi {
        let (rec, fit) = zfit_record(cfg, &ctx, n);
        if let Some(e) = &rec.error {
            if !cfg.is_range() {
                return Err(CmdError::Solver(e.clone()));
            }
        }
        if let Some(f) = fit {
            fits.push((n, f));
        }
        records.push(rec);
    }

    let reference: Vec<f64> = match ctx.sys.exact_e {
        Some(f) => ts.iter().map(|&t| f(t)).collect(),
        None => {
            let r = oracle_for(&ctx)?;
            ts.iter().map(|&t| r.e(t)).collect()
        }
    };
    let mut series = vec![SeriesJson {
        name: "reference".into(),
        values: reference,
    }];
    for (n, fit) in &fits {
        series.push(SeriesJson {
            name: format!("UN_{n}"),
            values: ts
                .iter()
                .map(|&t| eval_un(fit, t).unwrap_or(f64::NAN))
                .collect(),
        });
    }

    let artifacts = assemble(cfg, &ctx, base, records_to_value(records), ts, series)?;
    Ok(CmdOutput {
        artifacts,
        warnings,
    })
}

// ---------------------------------------------------------------- correlation

pub fn cmd_correlation(cfg: &RunConfig) -> Result<CmdOutput, CmdError> {
    let (ctx, warnings) = prepare(cfg, (2 * cfg.n_hi).max(2))?;
    let base = base_name(cfg, "correlation");
    let grid = cfg.t_grid.unwrap_or(TGrid {
        start: 0.0,
        stop: std::f64::consts::PI,
        count: 181,
    });
    let ts = grid.points();

    let mut records = Vec::new();
    let mut fits: Vec<(usize, ZnApproximant)> = Vec::new();
    for n in cfg.n_lo..=cfg.n_hi {
        let (rec, fit) = zfit_record(cfg, &ctx, n);
        if let Some(e) = &rec.error {
            if !cfg.is_range() {
                return Err(CmdError::Solver(e.clone()));
            }
        }
        if let Some(f) = fit {
            fits.push((n, f));
        }
        records.push(rec);
    }

    let reference: Vec<f64> = match ctx.sys.exact_c2 {
        Some(f) => ts.iter().map(|&t| f(t)).collect(),
        None => {
            let r = oracle_for(&ctx)?;
            ts.iter().map(|&t| r.correlation_sq(t)).collect()
        }
    };
    let mut series = vec![SeriesJson {
        name: "reference".into(),
        values: reference,
    }];
    for (n, fit) in &fits {
        series.push(SeriesJson {
            name: format!("C2_{n}"),
            values: ts.iter().map(|&t| correlation_squared(fit, t)).collect(),
        });
    }

    let mut artifacts = assemble(cfg, &ctx, base, records_to_value(records), ts.clone(), series)?;
    // csv files for this command label the abscissa tau
    if cfg.format == OutputFormat::Csv {
        if let Some(csv_artifact) = artifacts.first_mut() {
            let text = String::from_utf8(csv_artifact.bytes.clone()).expect("utf8 csv");
            let replaced = text.replacen("t,", "tau,", 1);
            csv_artifact.bytes = replaced.into_bytes();
        }
    }
    Ok(CmdOutput {
        artifacts,
        warnings,
    })
}

// ---------------------------------------------------------------- reference

#[derive(Serialize)]
struct SpectrumJson {
    meta: Meta,
    m_per_dim: usize,
    convergence_gap: f64,
    energies: Vec<f64>,
    overlaps: Vec<f64>,
    overlap_sum: f64,
}

pub fn cmd_reference(cfg: &RunConfig) -> Result<CmdOutput, CmdError> {
    let (ctx, warnings) = prepare(cfg, 2)?;
    let base = base_name(cfg, "reference");
    let grid = default_grid(cfg);
    let ts = grid.points();
    let r = oracle_for(&ctx)?;

    let spectrum = SpectrumJson {
        meta: meta(cfg, &ctx.sys),
        m_per_dim: r.m_per_dim,
        convergence_gap: r.convergence_gap,
        energies: r.energies.clone(),
        overlaps: r.overlaps.clone(),
        overlap_sum: r.overlaps.iter().sum(),
    };

    let mut series = vec![
        SeriesJson {
            name: "Z".into(),
            values: ts.iter().map(|&t| r.z(t)).collect(),
        },
        SeriesJson {
            name: "E".into(),
            values: ts.iter().map(|&t| r.e(t)).collect(),
        },
        SeriesJson {
            name: "C2".into(),
            values: ts.iter().map(|&t| r.correlation_sq(t)).collect(),
        },
    ];
    if let Some(f) = ctx.sys.exact_e {
        series.push(SeriesJson {
            name: "exact_E".into(),
            values: ts.iter().map(|&t| f(t)).collect(),
        });
    }
    if let Some(f) = ctx.sys.exact_c2 {
        series.push(SeriesJson {
            name: "exact_C2".into(),
            values: ts.iter().map(|&t| f(t)).collect(),
        });
    }

    let artifacts = match cfg.format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct RefJson {
                meta: Meta,
                spectrum: SpectrumInner,
                curve: CurveJson,
            }
            #[derive(Serialize)]
            struct SpectrumInner {
                m_per_dim: usize,
                convergence_gap: f64,
                energies: Vec<f64>,
                overlaps: Vec<f64>,
                overlap_sum: f64,
            }
            let doc = RefJson {
                meta: meta(cfg, &ctx.sys),
                spectrum: SpectrumInner {
                    m_per_dim: spectrum.m_per_dim,
                    convergence_gap: spectrum.convergence_gap,
                    energies: spectrum.energies,
                    overlaps: spectrum.overlaps,
                    overlap_sum: spectrum.overlap_sum,
                },
                curve: CurveJson { t: ts, series },
            };
            vec![Artifact {
                filename: format!("{base}.json"),
                bytes: to_json(&doc),
            }]
        }
        OutputFormat::Csv => {
            let mut header = vec!["t".to_string()];
            header.extend(series.iter().map(|s| s.name.clone()));
            let rows: Vec<Vec<String>> = (0..ts.len())
                .map(|i| {
                    let mut row = vec![fmt12(ts[i])];
                    row.extend(series.iter().map(|s| fmt12(s.values[i])));
                    row
                })
                .collect();
            vec![
                Artifact {
                    filename: format!("{base}.csv"),
                    bytes: csv(&header, &rows),
                },
                Artifact {
                    filename: format!("{base}.spectrum.json"),
                    bytes: to_json(&spectrum),
                },
            ]
        }
    };
    Ok(CmdOutput {
        artifacts,
        warnings,
    })
}

// ---------------------------------------------------------------- scan

#[derive(Serialize)]
struct ScanRecord {
    n: usize,
    highest_moment_index: usize,
    cmx_ok: bool,
    a0: Option<f64>,
    cmx_residual: Option<f64>,
    cmx_limit: Option<&'static str>,
    cmx_negative_roots: Option<usize>,
    cmx_error: Option<String>,
    zn_order: usize,
    zn_ok: bool,
    zn_w0: Option<f64>,
    zn_a0: Option<f64>,
    zn_residual: Option<f64>,
    zn_error: Option<String>,
}

#[derive(Serialize)]
struct ScanJson {
    meta: Meta,
    records: Vec<ScanRecord>,
}

pub fn cmd_scan(cfg: &RunConfig) -> Result<CmdOutput, CmdError> {
    let (ctx, warnings) = prepare(cfg, 2 * cfg.n_hi + 1)?;
    let base = base_name(cfg, "scan");
    let rows = order_scan(&ctx.moments, cfg.n_hi).map_err(|e| CmdError::Solver(e.to_string()))?;
    let records: Vec<ScanRecord> = rows
        .iter()
        .filter(|r| r.n >= cfg.n_lo)
        .map(|r| {
            let (cmx_ok, a0, cres, climit, cneg, cerr) = match &r.cmx {
                Ok(c) => (
                    true,
                    Some(c.a0),
                    Some(c.residual),
                    Some(limit_name(c.diagnostics.limit_behavior)),
                    Some(c.diagnostics.negative_real_roots.len()),
                    None,
                ),
                Err(e) => (false, None, None, None, None, Some(e.to_string())),
            };
            let (zn_ok, w0, za0, zres, zerr) = match &r.zn {
                Ok(z) => (
                    true,
                    Some(z.exponents[0]),
                    Some(z.amplitudes[0]),
                    Some(z.residual),
                    None,
                ),
                Err(e) => (false, None, None, None, Some(e.to_string())),
            };
            ScanRecord {
                n: r.n,
                highest_moment_index: r.highest_moment_index,
                cmx_ok,
                a0,
                cmx_residual: cres,
                cmx_limit: climit,
                cmx_negative_roots: cneg,
                cmx_error: cerr,
                zn_order: r.n + 1,
                zn_ok,
                zn_w0: w0,
                zn_a0: za0,
                zn_residual: zres,
                zn_error: zerr,
            }
        })
        .collect();

    let artifact = match cfg.format {
        OutputFormat::Json => Artifact {
            filename: format!("{base}.json"),
            bytes: to_json(&ScanJson {
                meta: meta(cfg, &ctx.sys),
                records,
            }),
        },
        OutputFormat::Csv => {
            let header: Vec<String> = [
                "n",
                "highest_moment_index",
                "a0",
                "cmx_residual",
                "cmx_limit",
                "cmx_negative_roots",
                "zn_order",
                "zn_w0",
                "zn_a0",
                "zn_residual",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect();
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.highest_moment_index.to_string(),
                        r.a0.map(fmt12).unwrap_or_default(),
                        r.cmx_residual.map(fmt12).unwrap_or_default(),
                        r.cmx_limit.unwrap_or("error").to_string(),
                        r.cmx_negative_roots.map(|v| v.to_string()).unwrap_or_default(),
                        r.zn_order.to_string(),
                        r.zn_w0.map(fmt12).unwrap_or_default(),
                        r.zn_a0.map(fmt12).unwrap_or_default(),
                        r.zn_residual.map(fmt12).unwrap_or_default(),
                    ]
                })
                .collect();
            Artifact {
                filename: format!("{base}.csv"),
                bytes: csv(&header, &rows),
            }
        }
    };
    Ok(CmdOutput {
        artifacts: vec![artifact],
        warnings,
    })
}

/// Dispatch used by the binary.
pub fn run_command(kind: CmdKind, cfg: &RunConfig) -> Result<CmdOutput, CmdError> {
    match kind {
        CmdKind::Moments => cmd_moments(cfg),
        CmdKind::Cmx => cmd_cmx(cfg),
        CmdKind::Zfit => cmd_zfit(cfg),
        CmdKind::Correlation => cmd_correlation(cfg),
        CmdKind::Reference => cmd_reference(cfg),
        CmdKind::Scan => cmd_scan(cfg),
    }
}

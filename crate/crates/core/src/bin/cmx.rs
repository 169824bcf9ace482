//! Command-line front end: moment tables, expansion parameters, and curve
//! data as CSV/JSON files.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use prony_cmx::config::{
    parse_config, parse_format, parse_n_range, parse_precision, parse_t_grid, CmdKind, ConfigError,
    OutputFormat, Precision, RunConfig, SystemSpec,
};
use prony_cmx::output::{run_command, CmdError};

#[derive(Parser)]
#[command(
    name = "cmx",
    version,
    about = "Moment expansions and exponential-sum fits for polynomial-potential models"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct CommonArgs {
    /// config file with [model]/[trial]/[run] sections
    #[arg(long)]
    config: Option<PathBuf>,
    /// catalog pair: ho, ho_gauss, quartic, coupled2d, double_well
    #[arg(long)]
    model: Option<String>,
    /// expansion order or range, e.g. 3 or 2..5
    #[arg(long = "N", value_name = "A..B")]
    n: Option<String>,
    /// evaluation grid START:STOP:COUNT
    #[arg(long, value_name = "S:E:C")]
    t: Option<String>,
    /// highest moment order for `moments`
    #[arg(long = "J", value_name = "ORDER")]
    j: Option<usize>,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
    /// double or ext:DIGITS
    #[arg(long)]
    precision: Option<String>,
    /// recorded in output metadata; fixes randomized test suites elsewhere
    #[arg(long)]
    seed: Option<u64>,
    /// output path stem; artifact suffixes are appended
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// exact moments and connected moments
    Moments(CommonArgs),
    /// connected-moments expansion: ground-energy column, roots, curves
    Cmx(CommonArgs),
    /// exponential fit of the generating function and its logarithmic derivative
    Zfit(CommonArgs),
    /// survival probability |Z_N(it)|² against the reference
    Correlation(CommonArgs),
    /// closed-form curves and the diagonalization spectrum
    Reference(CommonArgs),
    /// order scan: both expansions per order with shared moment budgets
    Scan(CommonArgs),
}

fn resolve(kind: CmdKind, a: &CommonArgs) -> Result<RunConfig, ConfigError> {
    let file = match &a.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| ConfigError {
                line: 0,
                field: "config".into(),
                message: format!("cannot read {}: {e}", path.display()),
            })?;
            Some(parse_config(&text)?)
        }
        None => None,
    };

    let system = if let Some(name) = &a.model {
        SystemSpec::Catalog(name.clone())
    } else if let Some(f) = &file {
        if let Some(name) = &f.model_name {
            SystemSpec::Catalog(name.clone())
        } else {
            match (&f.inline_model, &f.inline_trial) {
                (Some(h), Some(t)) => SystemSpec::Inline {
                    hamiltonian: h.clone(),
                    trial: t.clone(),
                },
                _ => {
                    return Err(ConfigError {
                        line: 0,
                        field: "model".into(),
                        message: "config defines no catalog name and no complete inline model/trial"
                            .into(),
                    })
                }
            }
        }
    } else {
        return Err(ConfigError {
            line: 0,
            field: "model".into(),
            message: "no model: pass --model NAME or --config with a [model] section".into(),
        });
    };

    let default_n = match kind {
        CmdKind::Moments | CmdKind::Reference => (1, 1),
        CmdKind::Scan => (1, 5),
        _ => (2, 5),
    };
    let n = match &a.n {
        Some(s) => parse_n_range(s)?,
        None => file.as_ref().and_then(|f| f.n).unwrap_or(default_n),
    };
    let t_grid = match &a.t {
        Some(s) => Some(parse_t_grid(s)?),
        None => file.as_ref().and_then(|f| f.t_grid),
    };
    let format = match &a.format {
        Some(s) => parse_format(s)?,
        None => file
            .as_ref()
            .and_then(|f| f.format)
            .unwrap_or(OutputFormat::Csv),
    };
    let precision = match &a.precision {
        Some(s) => parse_precision(s)?,
        None => file
            .as_ref()
            .and_then(|f| f.precision)
            .unwrap_or(Precision::Double),
    };
    let cfg = RunConfig {
        system,
        n_lo: n.0,
        n_hi: n.1,
        j_max: a.j.or(file.as_ref().and_then(|f| f.j_max)).unwrap_or(13),
        t_grid,
        format,
        precision,
        seed: a.seed.or(file.as_ref().and_then(|f| f.seed)).unwrap_or(0),
        out: a.out.clone().or(file.as_ref().and_then(|f| f.out.clone())),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = match &cli.cmd {
        Cmd::Moments(a) => (CmdKind::Moments, a),
        Cmd::Cmx(a) => (CmdKind::Cmx, a),
        Cmd::Zfit(a) => (CmdKind::Zfit, a),
        Cmd::Correlation(a) => (CmdKind::Correlation, a),
        Cmd::Reference(a) => (CmdKind::Reference, a),
        Cmd::Scan(a) => (CmdKind::Scan, a),
    };

    let cfg = match resolve(kind, args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    match run_command(kind, &cfg) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            for artifact in &out.artifacts {
                if let Err(e) = std::fs::write(&artifact.filename, &artifact.bytes) {
                    eprintln!("error: cannot write {}: {e}", artifact.filename);
                    return ExitCode::from(1);
                }
                println!("wrote {}", artifact.filename);
            }
            ExitCode::SUCCESS
        }
        Err(CmdError::Config(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CmdError::Solver(m)) => {
            eprintln!("error: solver failure: {m}");
            ExitCode::from(3)
        }
    }
}

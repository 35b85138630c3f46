//! `cpmult`: maximal output p-norm experiments from the command line.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cpmult_core::conditions::{check_postr, choi_entrywise_nonneg, search_basis, SearchConfig};
use cpmult_core::experiment::{linear_grid, rows_to_csv, sweep};
use cpmult_core::norms::{
    mult_ratio, norm_2_to_2_witness, norm_q_to_p, nu_p, Domain, OptimizerConfig, AGREEMENT_TOL,
};
use cpmult_core::{Channel, Error, ZooSpec};

use report::{matrix_json, state_json, Format, Report, Row, EXACT_TOL};

/// Largest input or output dimension of a tensor product; keeps its
/// superoperator at most 81×81.
const TENSOR_DIM_CAP: usize = 9;

#[derive(Parser)]
#[command(name = "cpmult", version, about = "Maximal output p-norms of completely positive maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate ν_p, the maximal output p-norm.
    Nu {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        opt: OptArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Estimate the induced q→p norm; q = p = 2 also reports the exact value.
    Norm {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum, default_value_t = Restrict::Unrestricted)]
        restrict: Restrict,
        #[command(flatten)]
        opt: OptArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check entrywise nonnegativity of the condition matrix.
    CheckCondition {
        #[command(flatten)]
        source: Source,
        /// Also search for a unitary basis change that satisfies the condition.
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, env = "CPMULT_SEED", default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Multiplicativity ratio ν_p(A⊗B) / ν_p(A)ν_p(B).
    Mult {
        #[command(flatten)]
        pair: PairSource,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        opt: OptArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Multiplicativity ratios over a grid of p values (CSV by default).
    Sweep {
        #[command(flatten)]
        pair: PairSource,
        /// `start:stop:step` or a comma-separated list.
        #[arg(long)]
        p_grid: String,
        #[command(flatten)]
        opt: OptArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Print the channel JSON for a zoo spec such as `werner-holevo:3`.
    Zoo {
        spec: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Source {
    /// Zoo spec string or zoo spec JSON.
    #[arg(long, conflicts_with = "channel", required_unless_present = "channel")]
    zoo: Option<String>,
    /// Channel JSON file (Kraus form or zoo spec JSON).
    #[arg(long, value_name = "FILE")]
    channel: Option<PathBuf>,
}

#[derive(Args)]
struct PairSource {
    #[arg(long, conflicts_with = "a_file", required_unless_present = "a_file")]
    a_zoo: Option<String>,
    #[arg(long, value_name = "FILE")]
    a_file: Option<PathBuf>,
    #[arg(long, conflicts_with = "b_file", required_unless_present = "b_file")]
    b_zoo: Option<String>,
    #[arg(long, value_name = "FILE")]
    b_file: Option<PathBuf>,
}

#[derive(Args)]
struct OptArgs {
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    #[arg(long, default_value_t = 2000)]
    max_iters: usize,
    /// Relative improvement below which a restart stops.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, env = "CPMULT_SEED", default_value_t = 0)]
    seed: u64,
}

impl OptArgs {
    fn config(&self) -> OptimizerConfig {
        OptimizerConfig {
            step_tol: self.tol,
            ..OptimizerConfig::default()
                .with_restarts(self.restarts)
                .with_max_iters(self.max_iters)
                .with_seed(self.seed)
        }
    }

    fn echo(&self) -> serde_json::Value {
        json!({ "restarts": self.restarts, "max_iters": self.max_iters, "tol": self.tol })
    }
}

#[derive(Args)]
struct OutArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Restrict {
    SelfAdjoint,
    Unrestricted,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(String),
    Input(String),
    Cap(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::NotCompletelyPositive(_) | Error::NotTracePreserving(_) | Error::NotPsd(_)) => 3,
            CliError::Cap(_) => 4,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(m) | CliError::Input(m) | CliError::Cap(m) => f.write_str(m),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn parse_zoo(text: &str) -> CliResult<ZooSpec> {
    if text.trim_start().starts_with('{') {
        Ok(serde_json::from_str(text).map_err(Error::from)?)
    } else {
        Ok(text.parse()?)
    }
}

fn load_file(path: &Path) -> CliResult<Channel> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    match Channel::from_json_str(&text) {
        Ok(ch) => Ok(ch),
        Err(Error::Json(_)) => match serde_json::from_str::<ZooSpec>(&text) {
            Ok(spec) => Ok(spec.build()?),
            Err(_) => Err(CliError::Input(format!("{}: neither channel JSON nor zoo spec JSON", path.display()))),
        },
        Err(e) => Err(e.into()),
    }
}

fn load(zoo: &Option<String>, file: &Option<PathBuf>) -> CliResult<(Channel, String)> {
    match (zoo, file) {
        (Some(text), _) => {
            let spec = parse_zoo(text)?;
            Ok((spec.build()?, spec.to_string()))
        }
        (None, Some(path)) => Ok((load_file(path)?, path.display().to_string())),
        (None, None) => Err(CliError::Input("no channel source given".into())),
    }
}

fn load_pair(pair: &PairSource) -> CliResult<(Channel, Channel, serde_json::Value)> {
    let (a, a_name) = load(&pair.a_zoo, &pair.a_file)?;
    let (b, b_name) = load(&pair.b_zoo, &pair.b_file)?;
    let (d_in, d_out) = (a.dim_in() * b.dim_in(), a.dim_out() * b.dim_out());
    if d_in > TENSOR_DIM_CAP || d_out > TENSOR_DIM_CAP {
        return Err(CliError::Cap(format!(
            "tensor product is {d_in} -> {d_out}; dimensions above {TENSOR_DIM_CAP} are not supported"
        )));
    }
    Ok((a, b, json!({ "a": a_name, "b": b_name })))
}

fn parse_grid(text: &str) -> CliResult<Vec<f64>> {
    let bad = || CliError::Input(format!("invalid p grid {text:?}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let parts: Vec<&str> = text.split(':').collect();
    let grid = match parts.as_slice() {
        [start, stop, step] => {
            let step = num(step)?;
            if !(step > 0.0) {
                return Err(bad());
            }
            linear_grid(num(start)?, num(stop)?, step)
        }
        [list] => list.split(',').map(num).collect::<CliResult<_>>()?,
        _ => return Err(bad()),
    };
    if grid.is_empty() {
        return Err(bad());
    }
    Ok(grid)
}

fn restrict_domain(r: Restrict) -> (Domain, &'static str) {
    match r {
        Restrict::SelfAdjoint => (Domain::SelfAdjoint, "self-adjoint"),
        Restrict::Unrestricted => (Domain::Unrestricted, "unrestricted"),
    }
}

fn run(command: Command) -> CliResult<(String, Option<PathBuf>)> {
    match command {
        Command::Nu { source, p, opt, out } => {
            let (phi, name) = load(&source.zoo, &source.channel)?;
            let r = nu_p(&phi, p, &opt.config())?;
            let mut report = Report::new("nu", opt.seed, json!({ "channel": name, "p": p, "optimizer": opt.echo() }));
            report.rows.push(Row::new("nu_p", r.value, AGREEMENT_TOL, Some(r.converged)));
            report.details = json!({
                "witness": state_json(&r.argmax),
                "restarts_agreeing": r.restarts_agreeing,
                "restarts_run": r.restarts_run,
            });
            Ok((report.render(out.format.unwrap_or(Format::Json)), out.output))
        }
        Command::Norm { source, q, p, restrict, opt, out } => {
            let (phi, name) = load(&source.zoo, &source.channel)?;
            let (domain, domain_name) = restrict_domain(restrict);
            let r = norm_q_to_p(&phi, q, p, domain, &opt.config())?;
            let config = json!({ "channel": name, "q": q, "p": p, "restrict": domain_name, "optimizer": opt.echo() });
            let mut report = Report::new("norm", opt.seed, config);
            report.rows.push(Row::new("norm_optimized", r.value, AGREEMENT_TOL, Some(r.converged)));
            let mut details = json!({
                "argmax": matrix_json(&r.argmax),
                "restarts_agreeing": r.restarts_agreeing,
                "restarts_run": r.restarts_run,
            });
            if q == 2.0 && p == 2.0 {
                let exact = norm_2_to_2_witness(&phi);
                report.rows.insert(0, Row::new("norm_exact", exact.value, EXACT_TOL, None));
                details["exact_witness"] = matrix_json(&exact.witness);
            }
            report.details = details;
            Ok((report.render(out.format.unwrap_or(Format::Json)), out.output))
        }
        Command::CheckCondition { source, search, tol, seed, out } => {
            let (phi, name) = load(&source.zoo, &source.channel)?;
            let check = check_postr(&phi, None, tol)?;
            let config = json!({ "channel": name, "tol": tol, "search": search });
            let mut report = Report::new("check-condition", seed, config);
            report.rows.push(Row::new("min_entry", check.min_entry, tol, None));
            report.rows.push(Row::new("max_imag", check.max_imag, tol, None));
            let mut details = json!({
                "holds": check.holds,
                "choi_entrywise_nonneg": choi_entrywise_nonneg(&phi, tol),
            });
            if search {
                let cfg = SearchConfig { tol, ..SearchConfig::default().with_seed(seed) };
                let found = search_basis(&phi, &cfg)?;
                report.rows.push(Row::new("search_min_entry", found.min_entry, tol, None));
                report.rows.push(Row::new("search_max_imag", found.max_imag, tol, None));
                details["search"] = json!({
                    "holds": found.holds,
                    "penalty": found.penalty,
                    "best_u": matrix_json(&found.best_u),
                });
            }
            report.details = details;
            Ok((report.render(out.format.unwrap_or(Format::Json)), out.output))
        }
        Command::Mult { pair, p, opt, out } => {
            let (a, b, names) = load_pair(&pair)?;
            let r = mult_ratio(&a, &b, p, &opt.config())?;
            let config = json!({ "channels": names, "p": p, "optimizer": opt.echo() });
            let mut report = Report::new("mult", opt.seed, config);
            report.rows.push(Row::new("nu_A", r.nu_a.value, AGREEMENT_TOL, Some(r.nu_a.converged)));
            report.rows.push(Row::new("nu_B", r.nu_b.value, AGREEMENT_TOL, Some(r.nu_b.converged)));
            report.rows.push(Row::new("nu_AB", r.nu_ab.value, AGREEMENT_TOL, Some(r.nu_ab.converged)));
            report.rows.push(Row::new("ratio", r.ratio, AGREEMENT_TOL, Some(r.converged)));
            report.details = json!({ "witness": state_json(r.witness()) });
            Ok((report.render(out.format.unwrap_or(Format::Json)), out.output))
        }
        Command::Sweep { pair, p_grid, opt, out } => {
            let (a, b, names) = load_pair(&pair)?;
            let grid = parse_grid(&p_grid)?;
            let rows = sweep(&a, &b, &grid, &opt.config())?;
            let text = match out.format.unwrap_or(Format::Csv) {
                Format::Csv => rows_to_csv(&rows),
                Format::Json => {
                    let config = json!({ "channels": names, "p_grid": grid, "optimizer": opt.echo() });
                    let mut report = Report::new("sweep", opt.seed, config);
                    for r in &rows {
                        for (name, value) in
                            [("nu_A", r.nu_a), ("nu_B", r.nu_b), ("nu_AB", r.nu_ab), ("ratio", r.ratio), ("bell_ratio", r.bell_ratio)]
                        {
                            report.rows.push(Row::new(name, value, AGREEMENT_TOL, Some(r.converged)).at(r.p));
                        }
                    }
                    report.render(Format::Json)
                }
            };
            Ok((text, out.output))
        }
        Command::Zoo { spec, output } => {
            let channel = parse_zoo(&spec)?.build()?;
            Ok((channel.to_json_string() + "\n", output))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command).and_then(|(text, output)| match output {
        Some(path) => std::fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

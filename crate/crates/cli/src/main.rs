use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fockcalc_core::ops::{exp_affine_symbol, Boundedness};
use fockcalc_core::runner::{self, parse_complex, CheckArgs, CHECK_NAMES, SEED_ENV};
use fockcalc_core::{Complex, FockError, OutputFormat, RunConfig, Verdict};

const USAGE_EXIT: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "fockcalc", version, about = "Numerical checks for weighted composition operators on Fock space")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Fock space parameter.
    #[arg(long, global = true, default_value_t = 1.0)]
    alpha: f64,
    /// Truncation orders, strictly increasing.
    #[arg(long, global = true, value_delimiter = ',', default_values_t = runner::DEFAULT_ORDERS)]
    orders: Vec<usize>,
    /// Per-check tolerance override, `name=value`; repeatable.
    #[arg(long = "tol", global = true, value_parser = parse_override)]
    tolerance_overrides: Vec<(String, f64)>,
    #[arg(long, global = true, env = SEED_ENV, default_value_t = 42)]
    seed: u64,
    /// json, csv or text.
    #[arg(long, global = true, default_value = "json", value_parser = parse_format)]
    format: OutputFormat,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one named check.
    Check {
        name: String,
        #[command(flatten)]
        params: Box<ParamFlags>,
    },
    /// Run every check over its default parameters.
    Suite,
    /// Dump the finite section of W_{f,phi} as CSV.
    Matrix {
        #[command(flatten)]
        symbol: SymbolFlags,
        /// Matrix size N.
        #[arg(long, default_value_t = 8)]
        size: usize,
    },
    /// Exact vs quadrature inner products on monomials.
    Oracle {
        #[arg(long, default_value_t = runner::ORACLE_MAX_DEGREE)]
        max_degree: usize,
    },
}

#[derive(Args, Debug)]
struct ParamFlags {
    #[arg(long, value_parser = parse_complex_flag)]
    c: Option<Complex>,
    #[arg(long, value_parser = parse_complex_flag)]
    a0: Option<Complex>,
    #[arg(long, value_parser = parse_complex_flag)]
    a1: Option<Complex>,
    #[arg(long, value_parser = parse_complex_flag)]
    a: Option<Complex>,
    #[arg(long, value_parser = parse_complex_flag)]
    b: Option<Complex>,
    #[arg(long, value_parser = parse_complex_flag)]
    eta: Option<Complex>,
    #[arg(long, value_parser = parse_complex_flag)]
    weight_c: Option<Complex>,
    #[arg(long, value_parser = parse_complex_flag)]
    weight_w: Option<Complex>,
    #[arg(long, value_parser = parse_complex_flag)]
    map_a: Option<Complex>,
    #[arg(long, value_parser = parse_complex_flag)]
    map_b: Option<Complex>,
    #[arg(long)]
    j_max: Option<usize>,
    #[arg(long)]
    max_degree: Option<usize>,
}

/// `f(z) = c e^{wz}`, `phi(z) = az + b`; identity symbol by default.
#[derive(Args, Debug)]
struct SymbolFlags {
    #[arg(long, default_value = "1", value_parser = parse_complex_flag)]
    weight_c: Complex,
    #[arg(long, default_value = "0", value_parser = parse_complex_flag)]
    weight_w: Complex,
    #[arg(long, default_value = "1", value_parser = parse_complex_flag)]
    map_a: Complex,
    #[arg(long, default_value = "0", value_parser = parse_complex_flag)]
    map_b: Complex,
}

fn parse_complex_flag(s: &str) -> Result<Complex, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: FockError| e.to_string())
}

fn parse_override(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or("expected name=value")?;
    let value: f64 = value.parse().map_err(|_| format!("bad tolerance {value:?}"))?;
    Ok((name.to_string(), value))
}

impl From<ParamFlags> for CheckArgs {
    fn from(p: ParamFlags) -> Self {
        CheckArgs {
            c: p.c,
            a0: p.a0,
            a1: p.a1,
            a: p.a,
            b: p.b,
            eta: p.eta,
            weight_c: p.weight_c,
            weight_w: p.weight_w,
            map_a: p.map_a,
            map_b: p.map_b,
            j_max: p.j_max,
            max_degree: p.max_degree,
        }
    }
}

fn config(g: GlobalOpts) -> RunConfig {
    RunConfig {
        alpha: g.alpha,
        orders: g.orders,
        tolerance_overrides: g.tolerance_overrides.into_iter().collect::<BTreeMap<_, _>>(),
        seed: g.seed,
        output_format: g.format,
    }
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}

fn usage_error(err: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(USAGE_EXIT)
}

fn verdict_exit(v: Verdict) -> ExitCode {
    ExitCode::from(runner::exit_code(v) as u8)
}

fn run(cli: Cli) -> ExitCode {
    let cfg = config(cli.global);
    if let Err(e) = cfg.validate() {
        return usage_error(e);
    }
    match cli.command {
        Command::Check { name, params } => {
            if !CHECK_NAMES.contains(&name.as_str()) {
                return usage_error(format!("unknown check {name:?}; known: {}", CHECK_NAMES.join(", ")));
            }
            match runner::run_check(&name, &(*params).into(), &cfg) {
                Ok(report) => {
                    emit(&runner::format_report(&report, cfg.output_format));
                    verdict_exit(report.verdict())
                }
                Err(e) => usage_error(e),
            }
        }
        Command::Suite => match runner::run_suite(&cfg) {
            Ok(reports) => {
                emit(&runner::format_suite(&reports, &cfg));
                verdict_exit(runner::aggregate_verdict(&reports))
            }
            Err(e) => usage_error(e),
        },
        Command::Matrix { symbol, size } => {
            let result = exp_affine_symbol(symbol.weight_c, symbol.weight_w, symbol.map_a, symbol.map_b)
                .and_then(|sym| runner::matrix_csv(&sym, cfg.alpha, size));
            match result {
                Ok((csv, class)) => {
                    if class == Boundedness::Unbounded {
                        eprintln!("warning: Unbounded composition map; finite section emitted anyway");
                    }
                    emit(&csv);
                    ExitCode::SUCCESS
                }
                Err(e) => usage_error(e),
            }
        }
        Command::Oracle { max_degree } => {
            let args = CheckArgs { max_degree: Some(max_degree), ..CheckArgs::default() };
            match runner::run_check("oracle", &args, &cfg) {
                Ok(report) => {
                    emit(&runner::format_report(&report, cfg.output_format));
                    verdict_exit(report.verdict())
                }
                Err(e) => usage_error(e),
            }
        }
    }
}

fn main() -> ExitCode {
    match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                ExitCode::from(USAGE_EXIT)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}

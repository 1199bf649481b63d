//! Named checks, their default parameters, the suite, and report formatting.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::json;

use crate::error::{FockError, Result};
use crate::maps::{AffineMap, SymbolMap};
use crate::ops::{assemble_matrix, boundedness_check, exp_affine_symbol, Boundedness};
use crate::oracle::check_oracle_agreement;
use crate::report::{CheckReport, Verdict, TOOL_VERSION};
use crate::samples::{default_samples, DEFAULT_SEED};
use crate::series::FockParams;
use crate::symbol::{WcoSymbol, WcoWeight};
use crate::theorems::{self as th, SelfAdjointSymbolParams};
use crate::{c, Complex};

pub const SEED_ENV: &str = "FOCKCALC_SEED";
pub const DEFAULT_ORDERS: [usize; 3] = [16, 32, 64];
pub const ORACLE_MAX_DEGREE: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = FockError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "text" => Ok(Self::Text),
            other => Err(FockError::InvalidParams(format!("unknown output format {other:?}"))),
        }
    }
}

impl OutputFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Json => "json",
            Self::Csv => "csv",
            Self::Text => "text",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub alpha: f64,
    pub orders: Vec<usize>,
    pub tolerance_overrides: BTreeMap<String, f64>,
    pub seed: u64,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            orders: DEFAULT_ORDERS.to_vec(),
            tolerance_overrides: BTreeMap::new(),
            seed: DEFAULT_SEED,
            output_format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(FockError::InvalidParams(format!("alpha must be positive, got {}", self.alpha)));
        }
        if self.orders.is_empty() || self.orders.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FockError::InvalidParams("orders must be non-empty and strictly increasing".into()));
        }
        for &n in &self.orders {
            FockParams::new(self.alpha, n)?;
        }
        for name in self.tolerance_overrides.keys() {
            if !CHECK_NAMES.contains(&name.as_str()) {
                return Err(FockError::UnknownCheck(name.clone()));
            }
        }
        Ok(())
    }

    /// Applies `FOCKCALC_SEED` when set.
    pub fn with_env_seed(mut self) -> Result<Self> {
        if let Ok(v) = std::env::var(SEED_ENV) {
            self.seed = v
                .trim()
                .parse()
                .map_err(|_| FockError::InvalidParams(format!("{SEED_ENV}={v:?} is not an integer")))?;
        }
        Ok(self)
    }

    fn max_order(&self) -> usize {
        *self.orders.last().expect("validated")
    }

    fn echo(&self) -> serde_json::Value {
        json!({
            "alpha": self.alpha, "orders": self.orders, "seed": self.seed,
            "tolerance_overrides": self.tolerance_overrides,
        })
    }
}

/// Registered check names, sorted.
pub const CHECK_NAMES: [&str; 17] = [
    "adjoint-kernel",
    "boundedness",
    "commutant-symbols",
    "counterexample",
    "cphi-adjoint",
    "degenerate-commutant",
    "disk-selfmap",
    "eigen-identity",
    "fixed-point",
    "fixed-point-transfer",
    "h-conjugation",
    "moebius-conjugation",
    "normality",
    "oracle",
    "product-symbol",
    "selfadjoint-forward",
    "selfadjoint-reverse",
];

/// Optional per-check parameters; unset fields fall back to per-check defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CheckArgs {
    pub c: Option<Complex>,
    pub a0: Option<Complex>,
    pub a1: Option<Complex>,
    pub a: Option<Complex>,
    pub b: Option<Complex>,
    pub eta: Option<Complex>,
    pub weight_c: Option<Complex>,
    pub weight_w: Option<Complex>,
    pub map_a: Option<Complex>,
    pub map_b: Option<Complex>,
    pub j_max: Option<usize>,
    pub max_degree: Option<usize>,
}

/// Accepts `re`, `imi` or `re+imi` / `re-imi`.
pub fn parse_complex(s: &str) -> Result<Complex> {
    let t: String = s.chars().filter(|ch| !ch.is_whitespace()).collect();
    let z = Complex::from_str(&t).map_err(|_| FockError::InvalidParams(format!("not a complex number: {s:?}")))?;
    crate::ensure_finite(z, "complex flag")
}

fn real(z: Complex, what: &str) -> Result<f64> {
    if z.im != 0.0 {
        return Err(FockError::InvalidParams(format!("{what} must be real, got {z}")));
    }
    Ok(z.re)
}

impl CheckArgs {
    fn c(&self) -> Complex {
        self.c.unwrap_or(c(1.0, 0.0))
    }
    fn a0(&self) -> Complex {
        self.a0.unwrap_or(c(0.5, 0.0))
    }
    fn a1(&self) -> Complex {
        self.a1.unwrap_or(c(0.25, 0.0))
    }
    fn eta(&self) -> Complex {
        self.eta.unwrap_or(c(2.0, 0.0))
    }

    fn selfadjoint(&self, alpha: f64) -> Result<SelfAdjointSymbolParams> {
        SelfAdjointSymbolParams::candidate(self.c(), self.a0(), self.a1(), c(0.0, 0.0), alpha)
    }

    /// `--weight-c/--weight-w/--map-a/--map-b`, defaulting to `e^{αz/2}`, `1/2 + z/4`.
    fn symbol(&self, alpha: f64) -> Result<WcoSymbol> {
        exp_affine_symbol(
            self.weight_c.unwrap_or(c(1.0, 0.0)),
            self.weight_w.unwrap_or(c(0.5 * alpha, 0.0)),
            self.map_a.unwrap_or(c(0.25, 0.0)),
            self.map_b.unwrap_or(c(0.5, 0.0)),
        )
    }

    /// `--a/--b` as an affine map.
    fn affine(&self, a: Complex, b: Complex) -> Result<AffineMap> {
        AffineMap::new(self.a.unwrap_or(a), self.b.unwrap_or(b))
    }
}

/// Runs one named check with the overrides from `cfg` applied.
pub fn run_check(name: &str, args: &CheckArgs, cfg: &RunConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let mut report = dispatch(name, args, cfg)?;
    if let Some(&t) = cfg.tolerance_overrides.get(name) {
        report.override_tolerance(t);
    }
    Ok(report)
}

fn dispatch(name: &str, args: &CheckArgs, cfg: &RunConfig) -> Result<CheckReport> {
    let alpha = cfg.alpha;
    let orders = cfg.orders.as_slice();
    let samples = default_samples(cfg.seed);
    match name {
        "selfadjoint-forward" => th::check_selfadjoint_forward(&args.selfadjoint(alpha)?, orders, cfg.seed),
        "selfadjoint-reverse" => {
            let sym = args.symbol(alpha)?;
            th::check_selfadjoint_reverse(&sym.weight, sym.affine_map()?, FockParams::new(alpha, cfg.max_order())?)
        }
        "fixed-point" => th::check_fixed_point(&args.selfadjoint(alpha)?.map()),
        "h-conjugation" => th::check_h_conjugation(&args.selfadjoint(alpha)?.map(), &samples),
        "disk-selfmap" => Ok(th::check_disk_selfmap(args.a0(), real(args.a1(), "a1")?)),
        "eigen-identity" => {
            th::check_eigen_identity(&args.selfadjoint(alpha)?, args.j_max.unwrap_or(5), &samples, orders)
        }
        "fixed-point-transfer" => {
            let p = args.selfadjoint(alpha)?;
            let b = th::fixed_point(&p.map())?;
            let (psi, g, _) = th::commutant_symbols(args.eta(), b, alpha)?;
            th::check_fixed_point_transfer(&p, &SymbolMap::from(psi), &g, &samples)
        }
        "commutant-symbols" => {
            let b = args.b.unwrap_or(c(2.0 / 3.0, 0.0));
            th::check_commutant_symbols(args.eta(), b, real(args.a1(), "a1")?, alpha, &samples)
        }
        "moebius-conjugation" => {
            let b = args.b.unwrap_or(c(2.0 / 3.0, 0.0));
            let (psi, _, _) = th::commutant_symbols(args.eta(), b, alpha)?;
            th::check_moebius_conjugation(&psi, b, args.eta(), &samples)
        }
        "counterexample" => th::reproduce_counterexample(args.eta()),
        "degenerate-commutant" => {
            let b = args.b.unwrap_or(c(2.0 / 3.0, 0.0));
            let a1 = real(args.a1(), "a1")?;
            let p = SelfAdjointSymbolParams::new(real(args.c(), "c")?, b * (1.0 - a1), a1, alpha)?;
            th::check_degenerate_commutant(b, &p, orders)
        }
        "cphi-adjoint" => {
            let map = args.affine(c(0.25, 0.0), c(0.5, 0.0))?;
            th::check_cphi_adjoint_factorization(&map, &samples, FockParams::new(alpha, cfg.max_order())?)
        }
        "normality" => {
            let weight = WcoWeight::exp_linear(
                args.weight_c.unwrap_or(c(1.0, 0.0)),
                args.weight_w.unwrap_or(c(0.0, 0.0)),
            )?;
            th::check_normality(&weight, &args.affine(c(0.5, 0.0), c(0.0, 0.0))?, alpha, orders)
        }
        "product-symbol" => {
            let second = exp_affine_symbol(c(0.8, 0.1), c(0.0, 0.3), c(0.0, 0.5), c(0.2, 0.0))?;
            th::check_product_symbol(&args.symbol(alpha)?, &second, alpha, orders, &samples)
        }
        "adjoint-kernel" => th::check_adjoint_on_kernel(&args.symbol(alpha)?, alpha, orders, &samples),
        "boundedness" => Ok(th::check_boundedness(&args.affine(c(0.25, 0.0), c(0.5, 0.0))?)),
        "oracle" => check_oracle_agreement(alpha, args.max_degree.unwrap_or(ORACLE_MAX_DEGREE)),
        other => Err(FockError::UnknownCheck(other.to_string())),
    }
}

/// Default parameter grid: one or more argument sets per registered check.
pub fn suite_cases() -> Vec<(&'static str, CheckArgs)> {
    let d = CheckArgs::default;
    let mut cases: Vec<(&'static str, CheckArgs)> = CHECK_NAMES.iter().map(|&n| (n, d())).collect();
    cases.extend([
        ("selfadjoint-forward", CheckArgs { a0: Some(c(0.0, 0.0)), a1: Some(c(0.5, 0.0)), ..d() }),
        ("fixed-point", CheckArgs { a0: Some(c(0.0, 0.3)), a1: Some(c(-0.2, 0.0)), ..d() }),
        ("h-conjugation", CheckArgs { a0: Some(c(0.0, 0.3)), a1: Some(c(-0.2, 0.0)), ..d() }),
        ("disk-selfmap", CheckArgs { a0: Some(c(0.9, 0.0)), a1: Some(c(0.5, 0.0)), ..d() }),
        ("moebius-conjugation", CheckArgs { b: Some(c(0.0, 0.5)), eta: Some(c(0.7, 0.0)), ..d() }),
        ("counterexample", CheckArgs { eta: Some(c(1.0, 0.0)), ..d() }),
        ("degenerate-commutant", CheckArgs { b: Some(c(0.0, 0.0)), ..d() }),
        ("cphi-adjoint", CheckArgs { a: Some(c(0.0, 0.5)), b: Some(c(0.2, 0.0)), ..d() }),
        ("normality", CheckArgs { a: Some(c(0.5, 0.0)), b: Some(c(0.3, 0.0)), ..d() }),
        (
            "normality",
            CheckArgs { weight_w: Some(c(0.5, 0.0)), a: Some(c(0.25, 0.0)), b: Some(c(0.5, 0.0)), ..d() },
        ),
        ("boundedness", CheckArgs { a: Some(c(1.0, 0.0)), b: Some(c(0.1, 0.0)), ..d() }),
    ]);
    cases.sort_by_key(|(n, _)| *n);
    cases
}

/// All suite cases, evaluated in parallel and assembled in name order.
pub fn run_suite(cfg: &RunConfig) -> Result<Vec<CheckReport>> {
    cfg.validate()?;
    let cases = suite_cases();
    std::thread::scope(|s| {
        let handles: Vec<_> = cases.iter().map(|(name, args)| s.spawn(move || run_check(name, args, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("checker thread panicked")).collect()
    })
}

pub fn aggregate_verdict(reports: &[CheckReport]) -> Verdict {
    if reports.iter().all(|r| r.verdict().is_success()) {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Process exit code for a set of verdicts: `0` unless something failed.
pub fn exit_code(verdict: Verdict) -> i32 {
    if verdict.is_success() {
        0
    } else {
        1
    }
}

pub fn format_report(report: &CheckReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(report),
        OutputFormat::Csv => format!("{CSV_HEADER}\n{}", csv_rows(report)),
        OutputFormat::Text => text_block(report),
    }
}

pub fn format_suite(reports: &[CheckReport], cfg: &RunConfig) -> String {
    let verdict = aggregate_verdict(reports);
    match cfg.output_format {
        OutputFormat::Json => to_json(&json!({
            "tool_version": TOOL_VERSION,
            "config": cfg.echo(),
            "reports": reports,
            "verdict": verdict,
        })),
        OutputFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in reports {
                out.push_str(&csv_rows(r));
            }
            out
        }
        OutputFormat::Text => {
            let mut out = String::new();
            for r in reports {
                out.push_str(&text_block(r));
            }
            let _ = writeln!(out, "suite: {verdict:?} ({} reports)", reports.len());
            out
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

const CSV_HEADER: &str = "check,N,value,verdict";

fn csv_rows(r: &CheckReport) -> String {
    let verdict = r.verdict();
    r.residuals
        .iter()
        .map(|res| format!("{},{},{:e},{verdict:?}\n", r.check_name, res.order, res.value))
        .collect()
}

fn text_block(r: &CheckReport) -> String {
    let mut out = format!("{}: {:?}\n", r.check_name, r.verdict());
    for line in r.notes_text().split("; ") {
        let _ = writeln!(out, "  {line}");
    }
    out
}

/// CSV of the finite section together with the boundedness class of the map.
pub fn matrix_csv(sym: &WcoSymbol, alpha: f64, order: usize) -> Result<(String, Boundedness)> {
    let map = sym.affine_map()?;
    let m = assemble_matrix(sym, FockParams::new(alpha, order)?)?;
    Ok((m.to_csv(), boundedness_check(map)))
}

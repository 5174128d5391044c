//! Batch command-line interface: argument handling, dispatch, and the JSON
//! envelope around every report.

pub mod parse;
pub mod report;

use std::ffi::OsString;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arith::rational::{is_prime, parse_rat, primes_in, BigRat};
use crate::catalog::{self, CatalogEntry};
use crate::diffop::{Basis, DiffOp, RatMat, TruncatedSeries};
use crate::error::{Error, Result};
use crate::growth::{self, ValuationTable};
use crate::local::{self, Location};
use crate::pade;
use crate::pcurv::{self, ScanTarget};

pub use parse::{parse_operator, parse_ratfn, print_operator};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(
    name = "gop",
    version,
    about = "Arithmetic analysis of linear differential operators over Q(z)"
)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Source {
    /// Operator expression, e.g. "(1-z)*D^2 - D" or "theta^2 - 2"
    operator: Option<String>,
    /// Use a catalog entry instead of an expression
    #[arg(long, conflicts_with = "operator")]
    catalog: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Singular points, regularity and exponents
    Classify(Source),
    /// Indicial polynomial and exponents at one point
    Exponents {
        #[command(flatten)]
        src: Source,
        /// A rational number or "inf"
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// p-curvature at one prime
    Pcurv {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        prime: u64,
    },
    /// p-curvature nilpotence over a range of primes
    Scan {
        #[command(flatten)]
        src: Source,
        /// Inclusive range "a..b"
        #[arg(long, default_value = "2..50")]
        primes: String,
    },
    /// Denominators q_s of T^m G_m / m!
    Galochkin {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 30)]
        s_max: usize,
    },
    /// Truncated size sigma_hat
    Size {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 20)]
        s: usize,
        #[arg(long, default_value_t = 23)]
        prime_bound: u64,
    },
    /// Truncated generic radius at one prime, with the Dwork-Robba rows
    Radius {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 16)]
        s_max: usize,
    },
    /// Size against radius sandwich (heuristic)
    Bombieri {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 40)]
        s: usize,
        #[arg(long, default_value_t = 43)]
        prime_bound: u64,
        #[arg(long, default_value_t = 0.3)]
        slack: f64,
    },
    /// Type-II Pade approximants of a series vector
    Pade {
        /// Optional system source for the derived tower
        #[command(flatten)]
        src: Source,
        /// JSON file {"trunc_order": k, "components": [[[num, den], ...], ...]}
        #[arg(long)]
        series: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Built-in examples
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    List,
    Get { id: String },
}

/// Outcome of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::MixedBasis
        | Error::UnknownCatalogId(_)
        | Error::InvalidParameters(_) => EXIT_USAGE,
        _ => EXIT_DOMAIN,
    }
}

struct Resolved {
    id: String,
    operator: Option<DiffOp>,
    entry: Option<CatalogEntry>,
}

impl Resolved {
    fn operator(&self) -> Result<DiffOp> {
        self.operator
            .clone()
            .ok_or_else(|| Error::InvalidParameters("an operator or --catalog is required".into()))
    }

    fn system(&self) -> Result<RatMat> {
        match &self.entry {
            Some(e) => Ok(e.system()),
            None => self.operator()?.change_basis(Basis::D).companion(),
        }
    }

    fn scan_target(&self) -> Result<ScanTarget> {
        match &self.entry {
            Some(e) if e.explicit_system.is_some() => Ok(ScanTarget::System(e.system())),
            _ => Ok(ScanTarget::Operator(self.operator()?)),
        }
    }

    fn echo(&self) -> Value {
        json!({
            "source": self.id,
            "operator": self.operator.as_ref().map(print_operator),
        })
    }
}

fn resolve(src: &Source) -> Result<Resolved> {
    match (&src.operator, &src.catalog) {
        (_, Some(id)) => {
            let e = catalog::get(id)?;
            Ok(Resolved {
                id: id.clone(),
                operator: Some(e.operator.clone()),
                entry: Some(e),
            })
        }
        (Some(text), None) => Ok(Resolved {
            id: "expr".into(),
            operator: Some(parse_operator(text)?),
            entry: None,
        }),
        (None, None) => Ok(Resolved {
            id: "none".into(),
            operator: None,
            entry: None,
        }),
    }
}

/// "a..b" inclusive, or a single number.
pub fn parse_prime_range(s: &str) -> Result<Vec<u64>> {
    let bad = || Error::InvalidParameters(format!("bad prime range {s:?}, expected a..b"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let a: u64 = s.trim().parse().map_err(|_| bad())?;
            (a, a)
        }
    };
    if a > b {
        return Err(bad());
    }
    Ok(primes_in(a, b))
}

fn parse_point(s: &str) -> Result<Location> {
    match s.trim() {
        "inf" | "infinity" | "oo" => Ok(Location::Infinity),
        t => Ok(Location::Finite(parse_rat(t)?)),
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidParameters(format!("{p} is not prime")))
    }
}

fn json_rat(v: &Value) -> Result<BigRat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => parse_rat(&n.to_string()),
        _ => Err(Error::InvalidParameters(format!(
            "expected a number, got {v}"
        ))),
    }
}

/// Series vector in the documented JSON layout; each coefficient is a
/// [num, den] pair (strings or integers) or a single rational.
pub fn parse_series_json(text: &str) -> Result<Vec<TruncatedSeries>> {
    let bad = |m: &str| Error::InvalidParameters(format!("series file: {m}"));
    let v: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let order = v["trunc_order"]
        .as_u64()
        .ok_or_else(|| bad("missing trunc_order"))? as usize;
    let comps = v["components"]
        .as_array()
        .ok_or_else(|| bad("missing components"))?;
    comps
        .iter()
        .map(|c| {
            let coeffs = c.as_array().ok_or_else(|| bad("component is not a list"))?;
            if coeffs.len() < order {
                return Err(Error::InsufficientTruncation {
                    needed: order,
                    available: coeffs.len(),
                });
            }
            let vals = coeffs
                .iter()
                .take(order)
                .map(|x| match x {
                    Value::Array(pair) if pair.len() == 2 => {
                        let d = json_rat(&pair[1])?;
                        if d == BigRat::from_integer(0.into()) {
                            return Err(bad("zero denominator"));
                        }
                        Ok(json_rat(&pair[0])? / d)
                    }
                    other => json_rat(other),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(TruncatedSeries::new(vals))
        })
        .collect()
}

fn dispatch(cmd: &Cmd) -> Result<(&'static str, Value, Value)> {
    Ok(match cmd {
        Cmd::Classify(src) => {
            let r = resolve(src)?;
            let prof = local::classify_operator(&r.operator()?);
            ("classify", r.echo(), report::profile(&prof))
        }
        Cmd::Exponents { src, point } => {
            let r = resolve(src)?;
            let loc = parse_point(point)?;
            let l = r.operator()?;
            let phi = local::indicial_polynomial(&l, &loc)?;
            let (rats, rest) = local::split_exponents(&phi);
            let mut echo = r.echo();
            echo["point"] = json!(point);
            let res = json!({
                "location": report::location(&loc),
                "indicial_polynomial": phi.to_string_var("x"),
                "rational_exponents": rats.iter().map(report::rat).collect::<Vec<_>>(),
                "nonrational_factors": rest.iter().map(|p| p.to_string_var("x")).collect::<Vec<_>>(),
            });
            ("exponents", echo, res)
        }
        Cmd::Pcurv { src, prime } => {
            check_prime(*prime)?;
            let r = resolve(src)?;
            let g = r.system()?;
            let gp = pcurv::p_curvature(&g, *prime)?;
            let scan = pcurv::global_scan(&r.id, &r.scan_target()?, &[*prime])?;
            let mut echo = r.echo();
            echo["prime"] = json!(prime);
            let res = json!({
                "report": report::pcurv_report(&scan.reports[0]),
                "p_curvature": report::fp_matrix(&gp),
            });
            ("pcurv", echo, res)
        }
        Cmd::Scan { src, primes } => {
            let r = resolve(src)?;
            let ps = parse_prime_range(primes)?;
            let scan = pcurv::global_scan(&r.id, &r.scan_target()?, &ps)?;
            let mut echo = r.echo();
            echo["primes"] = json!(primes);
            ("scan", echo, report::scan(&scan))
        }
        Cmd::Galochkin { src, s_max } => {
            if *s_max == 0 {
                return Err(Error::InvalidParameters("s_max must be at least 1".into()));
            }
            let r = resolve(src)?;
            let tr = growth::galochkin_trace(&r.system()?, *s_max);
            let mut echo = r.echo();
            echo["s_max"] = json!(s_max);
            ("galochkin", echo, report::galochkin(&tr))
        }
        Cmd::Size {
            src,
            s,
            prime_bound,
        } => {
            if *s == 0 {
                return Err(Error::InvalidParameters("s must be at least 1".into()));
            }
            let r = resolve(src)?;
            let table = ValuationTable::new(&r.system()?, *s);
            let primes = growth::scan_primes(&table, *prime_bound);
            let h: Vec<Value> = primes
                .iter()
                .map(|&p| json!({"p": p, "value": report::log(&growth::h_s_p(&table, *s, p))}))
                .collect();
            let sigma = growth::size_estimate(&table, *s, *prime_bound);
            let mut echo = r.echo();
            echo["s"] = json!(s);
            echo["prime_bound"] = json!(prime_bound);
            (
                "size",
                echo,
                json!({"h": h, "sigma_hat": report::log(&sigma)}),
            )
        }
        Cmd::Radius { src, prime, s_max } => {
            check_prime(*prime)?;
            let r = resolve(src)?;
            let g = r.system()?;
            let table = ValuationTable::new(&g, (*s_max).max(g.dim()));
            let rho = growth::radius_estimate(&table, *prime, *s_max)?;
            let dr = growth::dwork_robba_check(&table, *prime, *s_max)?;
            let mut echo = r.echo();
            echo["prime"] = json!(prime);
            echo["s_max"] = json!(s_max);
            let res = json!({
                "log_plus_inverse_radius": report::log(&rho),
                "dwork_robba": report::dwork_robba(&dr),
                "dwork_robba_applicable": g.dim() >= 2,
            });
            ("radius", echo, res)
        }
        Cmd::Bombieri {
            src,
            s,
            prime_bound,
            slack,
        } => {
            if *s == 0 {
                return Err(Error::InvalidParameters("s must be at least 1".into()));
            }
            let r = resolve(src)?;
            let rep = growth::bombieri_report(&r.system()?, *s, *prime_bound, *slack);
            let mut echo = r.echo();
            echo["s"] = json!(s);
            echo["prime_bound"] = json!(prime_bound);
            ("bombieri", echo, report::bombieri(&rep))
        }
        Cmd::Pade { src, series, n, m } => {
            let text = std::fs::read_to_string(series)
                .map_err(|e| Error::InvalidParameters(format!("cannot read {series}: {e}")))?;
            let f = parse_series_json(&text)?;
            let r = resolve(src)?;
            let mut echo = r.echo();
            echo["series"] = json!(series);
            echo["N"] = json!(n);
            echo["M"] = json!(m);
            let res = if r.operator.is_some() {
                let sys = pade::PadeSystem::build(f, &r.system()?, *n, *m)?;
                report::pade_system(&sys)
            } else {
                let a = pade::pade_type2(&f, *n, *m)?;
                let ro = pade::residual_order(&a.q, &a.p, &f)?;
                let mut v = report::pade_approx(&a);
                v["residual_order"] = json!(ro);
                v
            };
            ("pade", echo, res)
        }
        Cmd::Catalog { action } => match action {
            CatalogCmd::List => (
                "catalog list",
                json!({}),
                Value::Array(
                    catalog::list()
                        .iter()
                        .map(|e| report::catalog_entry(e, false))
                        .collect(),
                ),
            ),
            CatalogCmd::Get { id } => {
                let e = catalog::get(id)?;
                (
                    "catalog get",
                    json!({"id": id}),
                    report::catalog_entry(&e, true),
                )
            }
        },
    })
}

fn init_threads() {
    if let Some(n) = std::env::var("GOP_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // a second initialisation in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable") + "\n",
        Format::Text => report::to_text(v),
    }
}

/// Run one invocation; argv includes the program name.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    init_threads();
    let start = Instant::now();
    match dispatch(&cli.cmd) {
        Ok((command, input, result)) => {
            let env = json!({
                "tool": "gop",
                "version": env!("CARGO_PKG_VERSION"),
                "command": command,
                "input": input,
                "result": result,
                "timing_ms": start.elapsed().as_secs_f64() * 1e3,
            });
            Outcome {
                code: EXIT_OK,
                stdout: render(&env, cli.format),
                stderr: String::new(),
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            let env = json!({
                "tool": "gop",
                "version": env!("CARGO_PKG_VERSION"),
                "error": {"kind": error_kind(&e), "message": e.to_string(), "exit_code": code},
            });
            Outcome {
                code,
                stdout: render(&env, cli.format),
                stderr: format!("gop: {e}\n"),
            }
        }
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::BadPrime { .. } => "BadPrime",
        Error::DivisionByZeroOperator => "DivisionByZeroOperator",
        Error::PoleAtOrigin => "PoleAtOrigin",
        Error::NotOrdinaryPoint => "NotOrdinaryPoint",
        Error::IrregularPoint(_) => "IrregularPoint",
        Error::NoSolution => "NoSolution",
        Error::InsufficientTruncation { .. } => "InsufficientTruncation",
        Error::InvalidParameters(_) => "InvalidParameters",
        Error::UnsupportedParameters(_) => "UnsupportedParameters",
        Error::Parse { .. } => "ParseError",
        Error::MixedBasis => "MixedBasisError",
        Error::BasisMismatch => "BasisMismatch",
        Error::UnknownCatalogId(_) => "UnknownCatalogId",
    }
}

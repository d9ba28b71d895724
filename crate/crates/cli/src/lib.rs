//! The `xtri` command line.
//!
//! [`run`] returns the exit code and the text for standard output: `0` on
//! success, `1` with a JSON error object for domain errors, `2` for usage
//! errors.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use xtri_core::artin::{eigen_basis, eigenvalues, ArtinMatrix, Elem, TruncatedAlgebra};
use xtri_core::formula::{main_formula, strongly_linked, HodgeTateWeights};
use xtri_core::good_pairs::{census, DEFAULT_CENSUS_BOUND};
use xtri_core::schubert::{
    jacobian_oracle_tangent_dim, schubert_tangent_dim, tangent_table, TangentRow, DEFAULT_ORACLE_BOUND,
};
use xtri_core::verify::{run_suite, SUITES};
use xtri_core::{Error, MultiPermutation, Permutation, WeightVector};

pub mod golden;

pub const WORKERS_ENV: &str = "XTRI_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "xtri", version, about = "Tangent dimensions at companion points, exactly")]
struct Cli {
    /// TOML file whose keys supply defaults for the flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Good-pair census of (S_n)^sigma.
    Census(CensusArgs),
    /// Evaluate the dimension formula.
    Dim(DimArgs),
    #[command(subcommand)]
    Schubert(SchubertCommand),
    /// Decide strong linkage mu ↑ lam.
    Linkage(LinkageArgs),
    #[command(subcommand)]
    Artin(ArtinCommand),
    /// Run the verification sweeps.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    sigma: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    bound: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct DimArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    sigma: Option<usize>,
    #[arg(long)]
    w: String,
    #[arg(long)]
    wsat: String,
    #[arg(long)]
    h: String,
    /// Evaluate for pairs that are not good; the report is marked conjectural.
    #[arg(long = "override")]
    allow_bad_pair: bool,
}

#[derive(Subcommand, Debug)]
enum SchubertCommand {
    /// Tangent dimension of the Schubert variety of w at the point tau.
    Tangent {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        w: String,
        #[arg(long)]
        tau: String,
        #[arg(long)]
        oracle: bool,
    },
    /// CSV table over all pairs tau ⪯ w of S_n.
    Table {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Args, Debug)]
struct LinkageArgs {
    #[arg(long)]
    mu: String,
    #[arg(long)]
    lam: String,
}

#[derive(Subcommand, Debug)]
enum ArtinCommand {
    /// Eigenbasis of a matrix over a truncated polynomial algebra.
    Eigen {
        #[arg(long)]
        algebra: String,
        /// JSON file holding the matrix as nested arrays of strings.
        #[arg(long)]
        matrix: PathBuf,
        /// Eigenvalues in the desired order, separated by ';'.
        #[arg(long)]
        lams: Option<String>,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    n: Option<usize>,
    sigma: Option<usize>,
    format: Option<Format>,
    bound: Option<usize>,
    oracle: Option<bool>,
    #[serde(rename = "override")]
    allow_bad_pair: Option<bool>,
    seed: Option<u64>,
    suite: Option<String>,
    workers: Option<usize>,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = std::result::Result<Output, Failure>;

enum Output {
    Json(Value),
    Text(String),
    /// Printed like `Json` but exits with status 1.
    Failed(Value),
}

pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    let config = match load_config(cli.config.as_deref()) {
        Ok(c) => c,
        Err(msg) => return (2, msg),
    };
    let workers = std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .or(config.workers)
        .unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(p) => p,
        Err(e) => return (2, format!("cannot start worker pool: {e}")),
    };
    match pool.install(|| dispatch(cli.command, &config)) {
        Ok(Output::Json(v)) => (0, render(&v)),
        Ok(Output::Text(s)) => (0, s),
        Ok(Output::Failed(v)) => (1, render(&v)),
        Err(Failure::Domain(e)) => (1, render(&error_json(&e))),
        Err(Failure::Usage(msg)) => (2, msg),
    }
}

/// Pretty JSON; `serde_json` maps keep keys sorted.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn error_json(e: &Error) -> Value {
    json!({ "error": { "kind": e.kind(), "message": e.to_string() } })
}

fn load_config(path: Option<&std::path::Path>) -> std::result::Result<Config, String> {
    let Some(path) = path else {
        return Ok(Config::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports always serialize")
}

fn required<T>(flag: Option<T>, config: Option<T>, name: &str) -> std::result::Result<T, Failure> {
    flag.or(config).ok_or_else(|| Failure::Usage(format!("missing required option --{name}")))
}

fn parse_perm(s: &str, n: Option<usize>) -> std::result::Result<Permutation, Failure> {
    let p: Permutation = s.parse()?;
    if let Some(n) = n {
        if p.n() != n {
            return Err(Error::SizeMismatch { expected: n, found: p.n() }.into());
        }
    }
    Ok(p)
}

fn dispatch(command: Command, config: &Config) -> Outcome {
    match command {
        Command::Census(a) => {
            let n = required(a.n, config.n, "n")?;
            let sigma = a.sigma.or(config.sigma).unwrap_or(1);
            let bound = a.bound.or(config.bound).unwrap_or(DEFAULT_CENSUS_BOUND);
            let report = census(n, sigma, bound)?;
            match a.format.or(config.format).unwrap_or(Format::Json) {
                Format::Json => Ok(Output::Json(to_value(&report))),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    for p in &report.bad_pairs {
                        w.serialize(p).map_err(|e| Failure::Usage(e.to_string()))?;
                    }
                    if report.bad_pairs.is_empty() {
                        w.write_record(["w1", "w2"]).map_err(|e| Failure::Usage(e.to_string()))?;
                    }
                    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
                    Ok(Output::Text(String::from_utf8(bytes).expect("csv output is utf-8")))
                }
            }
        }
        Command::Dim(a) => {
            let w = MultiPermutation::parse(&a.w)?;
            let s = MultiPermutation::parse(&a.wsat)?;
            let h = HodgeTateWeights::parse(&a.h)?;
            let n = a.n.or(config.n).unwrap_or(w.n());
            let sigma = a.sigma.or(config.sigma).unwrap_or(w.sigma());
            let allow = a.allow_bad_pair || config.allow_bad_pair.unwrap_or(false);
            Ok(Output::Json(to_value(&main_formula(n, sigma, &w, &s, &h, allow)?)))
        }
        Command::Schubert(SchubertCommand::Tangent { n, w, tau, oracle }) => {
            let n = n.or(config.n);
            let w = parse_perm(&w, n)?;
            let tau = parse_perm(&tau, Some(w.n()))?;
            let (dim, method) = if oracle || config.oracle.unwrap_or(false) {
                (jacobian_oracle_tangent_dim(&w, &tau, DEFAULT_ORACLE_BOUND)?, "jacobian")
            } else {
                (schubert_tangent_dim(&w, &tau)?, "combinatorial")
            };
            Ok(Output::Json(json!({ "dim": dim, "method": method })))
        }
        Command::Schubert(SchubertCommand::Table { n, oracle }) => {
            let n = required(n, config.n, "n")?;
            let rows = tangent_table(n, oracle || config.oracle.unwrap_or(false))?;
            Ok(Output::Text(table_csv(&rows)))
        }
        Command::Linkage(a) => {
            let mu = WeightVector::parse(&a.mu)?;
            let lam = WeightVector::parse(&a.lam)?;
            Ok(Output::Json(to_value(&strongly_linked(&mu, &lam)?)))
        }
        Command::Artin(ArtinCommand::Eigen { algebra, matrix, lams }) => {
            let alg = TruncatedAlgebra::parse(&algebra)?;
            let text = std::fs::read_to_string(&matrix)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", matrix.display())))?;
            let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let f = ArtinMatrix::from_json(&alg, &value)?;
            let lams: Vec<Elem> = match lams {
                Some(s) => s.split(';').map(|x| alg.parse_elem(x)).collect::<xtri_core::Result<_>>()?,
                None => eigenvalues(&f)?,
            };
            let basis = eigen_basis(&f, &lams)?;
            Ok(Output::Json(json!({
                "algebra": alg.to_string(),
                "basis": basis.to_json(),
                "eigenvalues": lams.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })))
        }
        Command::Verify(a) => {
            let suite = a.suite.or_else(|| config.suite.clone()).unwrap_or_else(|| "all".into());
            let seed = a.seed.or(config.seed).unwrap_or(0);
            let names: Vec<&str> = match suite.as_str() {
                "all" => SUITES.iter().copied().chain(["golden"]).collect(),
                other if other == "golden" || SUITES.contains(&other) => vec![other],
                other => return Err(Failure::Usage(format!("unknown suite {other:?}"))),
            };
            let mut reports = Vec::new();
            for name in names {
                let report = if name == "golden" {
                    golden::golden_suite()?
                } else {
                    run_suite(name, seed)?
                };
                reports.push(report);
            }
            let passed = reports.iter().all(|r| r.passed);
            let v = json!({ "passed": passed, "seed": seed, "suites": to_value(&reports) });
            Ok(if passed { Output::Json(v) } else { Output::Failed(v) })
        }
    }
}

pub fn table_csv(rows: &[TangentRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "w", "tau", "length", "dim"]).expect("in-memory write");
    for r in rows {
        w.write_record([
            r.w.n().to_string(),
            r.w.to_string(),
            r.tau.to_string(),
            r.length.to_string(),
            r.dim.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

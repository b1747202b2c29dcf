//! Command-line front end: reads JSON inputs, calls the library and writes
//! a JSON (or plain-text) report.
//!
//! Exit codes: 0 on success, 2 when the library rejects the input on
//! mathematical grounds, 1 for usage, I/O, JSON syntax and schema errors.

pub mod report;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use hyplat::json::{
    lattice_of_isometry, parse_algebraic_list, parse_curves, parse_isometry, parse_isometry_list, parse_lattice,
    parse_model, parse_nf_vector, parse_vector,
};
use hyplat::spectral::{irreducibility_audit, lehmer_check, spectral_data_with_tolerance};
use hyplat::{Error, Isometry, Lattice};

/// Environment variable capping polynomial degrees.
pub const MAX_DEGREE_VAR: &str = "HYPLAT_MAX_DEGREE";

#[derive(Parser, Debug)]
#[command(name = "hyplat", version, about = "Exact dynamics of hyperbolic lattice isometries")]
pub struct Cli {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,
    /// Emit a readable report; approximate values are marked with ≈.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Width to which algebraic reals are refined, as p/q or a decimal.
    #[arg(long, global = true, default_value = "1e-12")]
    pub tol: String,
    /// Longest word scanned by `fixedray`.
    #[arg(long, global = true, default_value_t = 0)]
    pub word_bound: usize,
    /// Worker threads for parallel work (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Null or positive entropy, with the spectral radius.
    Entropy(GArg),
    /// Characteristic polynomial, cyclotomic part and Salem factor.
    Salem(GArg),
    /// Exact leading eigenvectors, optionally with power iteration from a start class.
    Eigvec(EigvecArgs),
    /// Zariski decomposition of a class against a curve configuration.
    Zariski(ZariskiArgs),
    /// Multiplier of g on a stabilized class, or the periodic curves of a model.
    Stab(StabArgs),
    /// Looks for a g-stable set of disjoint (-1)-classes.
    Minimal(ModelArgs),
    /// Contracts a g-stable set of disjoint (-1)-classes.
    Blowdown(BlowdownArgs),
    /// Solves K + Delta = 0 on the periodic curves.
    Delta(ModelArgs),
    /// Coxeter elements of W_n and their Salem numbers.
    Coxeter(CoxeterArgs),
    /// Multiplicative dependence of multipliers.
    Multdep(MultdepArgs),
    /// Isotropic ray fixed by null-entropy generators.
    Fixedray(FixedrayArgs),
    /// Sum of a class over a finite matrix group.
    Average(AverageArgs),
}

#[derive(Args, Debug)]
pub struct GArg {
    #[arg(long)]
    pub g: PathBuf,
}

#[derive(Args, Debug)]
pub struct EigvecArgs {
    #[arg(long)]
    pub g: PathBuf,
    /// Start class for power iteration.
    #[arg(long)]
    pub b: Option<PathBuf>,
    #[arg(long, default_value_t = 500)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub iter_tol: f64,
}

#[derive(Args, Debug)]
pub struct ZariskiArgs {
    #[arg(long)]
    pub d: PathBuf,
    #[arg(long)]
    pub curves: PathBuf,
    /// Number of shuffled re-runs for the uniqueness probe.
    #[arg(long)]
    pub probe: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct StabArgs {
    #[arg(long)]
    pub g: PathBuf,
    /// Class whose multiplier is wanted.
    #[arg(long, required_unless_present = "model")]
    pub m: Option<PathBuf>,
    /// Surface model whose periodic curves are wanted.
    #[arg(long)]
    pub model: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ModelArgs {
    #[arg(long)]
    pub g: PathBuf,
    #[arg(long)]
    pub model: PathBuf,
}

#[derive(Args, Debug)]
pub struct BlowdownArgs {
    #[arg(long)]
    pub g: PathBuf,
    #[arg(long)]
    pub model: PathBuf,
    /// Comma-separated curve names; defaults to the set found by `minimal`.
    #[arg(long, value_delimiter = ',')]
    pub sigma: Option<Vec<String>>,
}

#[derive(Args, Debug)]
pub struct CoxeterArgs {
    #[arg(long, required_unless_present = "table")]
    pub n: Option<usize>,
    /// Comma-separated order of the simple roots.
    #[arg(long, value_delimiter = ',')]
    pub order: Option<Vec<usize>>,
    /// Range `a..b` (inclusive) of n for a table.
    #[arg(long, conflicts_with_all = ["n", "order"])]
    pub table: Option<String>,
}

#[derive(Args, Debug)]
pub struct MultdepArgs {
    #[arg(long)]
    pub alphas: PathBuf,
}

#[derive(Args, Debug)]
pub struct FixedrayArgs {
    #[arg(long)]
    pub gens: PathBuf,
}

#[derive(Args, Debug)]
pub struct AverageArgs {
    #[arg(long)]
    pub m: PathBuf,
    /// The finite group, as a list of isometries.
    #[arg(long)]
    pub group: PathBuf,
    /// Optional normalizing isometry whose compatibility is checked.
    #[arg(long)]
    pub g: Option<PathBuf>,
}

/// What went wrong, grouped by exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Parse(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(Error::SchemaViolation { .. }) => 1,
            CliError::Lib(_) => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Usage(m) => json!({ "code": usage_code(m), "message": m }),
            CliError::Io(m) => json!({ "code": "Io", "message": m }),
            CliError::Parse(m) => json!({ "code": "Parse", "message": m }),
            CliError::Lib(Error::SchemaViolation { pointer, message }) => {
                json!({ "code": "SchemaViolation", "pointer": pointer, "message": message })
            }
            CliError::Lib(e) => json!({ "code": e.code(), "message": e.to_string() }),
        }
    }
}

fn usage_code(message: &str) -> &'static str {
    if message.contains("unrecognized subcommand") {
        "UnknownSubcommand"
    } else {
        "Usage"
    }
}

/// Result of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs it.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: 0, stdout: text, stderr: String::new() };
            }
            let err = CliError::Usage(text);
            return Outcome { code: err.exit_code(), stdout: String::new(), stderr: format!("{}\n", err.to_json()) };
        }
    };
    match execute(&cli) {
        Ok(v) => {
            let stdout = if cli.pretty { report::pretty(&v) } else { format!("{}\n", serde_json::to_string(&v).expect("json")) };
            Outcome { code: 0, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("{}\n", e.to_json()) },
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// `p/q`, an integer, or a decimal such as `1e-12` or `0.001`, read
/// exactly. Must be positive.
pub fn parse_tolerance(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Usage(format!("--tol must be a positive rational, got {s:?}"));
    let q = if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        BigRational::new(p, q)
    } else {
        let lower = s.trim().to_ascii_lowercase();
        let (mantissa, exp) = match lower.split_once('e') {
            Some((m, e)) => (m.to_string(), e.parse::<i32>().map_err(|_| bad())?),
            None => (lower.clone(), 0),
        };
        let (int, frac) = mantissa.split_once('.').unwrap_or((&mantissa, ""));
        let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let exp = exp - frac.len() as i32;
        let ten = BigInt::from(10);
        if exp >= 0 {
            BigRational::from_integer(digits * num_traits::pow(ten, exp as usize))
        } else {
            BigRational::new(digits, num_traits::pow(ten, (-exp) as usize))
        }
    };
    if !q.is_positive() {
        return Err(bad());
    }
    Ok(q)
}

/// Degree cap from the environment (default 64).
pub fn max_degree() -> Result<usize, CliError> {
    match std::env::var(MAX_DEGREE_VAR) {
        Err(_) => Ok(hyplat::stabilizer::DEFAULT_MAX_DEGREE),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::Usage(format!("{MAX_DEGREE_VAR} must be a positive integer, got {v:?}"))),
        },
    }
}

fn check_rank(l: &Lattice, cap: usize) -> Result<(), CliError> {
    if l.rank() > cap {
        return Err(Error::DegreeTooLarge { degree: l.rank(), max: cap }.into());
    }
    Ok(())
}

fn read_isometry(path: &Path, cap: usize) -> Result<Isometry, CliError> {
    let v = read_json(path)?;
    let l = lattice_of_isometry(&v, "")?;
    check_rank(&l, cap)?;
    Ok(parse_isometry(&v, &l, "")?)
}

fn parse_range(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("--table expects a..b, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn execute(cli: &Cli) -> Result<Value, CliError> {
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        // a second initialisation in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    let tol = parse_tolerance(&cli.tol)?;
    let cap = max_degree()?;
    match &cli.command {
        Command::Entropy(a) => {
            let g = read_isometry(&a.g, cap)?;
            let data = spectral_data_with_tolerance(&g, &tol)?;
            Ok(report::entropy(&data.class, &tol))
        }
        Command::Salem(a) => {
            let g = read_isometry(&a.g, cap)?;
            let data = spectral_data_with_tolerance(&g, &tol)?;
            let (audit, lehmer) = match data.class.lambda() {
                Some(l) => (Some(irreducibility_audit(&data.split.salem_factor)), Some(lehmer_check(l))),
                None => (None, None),
            };
            Ok(report::salem(&data, audit.as_ref(), lehmer, &tol))
        }
        Command::Eigvec(a) => {
            let g = read_isometry(&a.g, cap)?;
            let data = spectral_data_with_tolerance(&g, &tol)?;
            let rays = hyplat::nef::leading_eigenvectors_from(&g, &data)?;
            let mut v = report::leading(&rays, &tol);
            if let Some(b) = &a.b {
                let b = parse_vector(&read_json(b)?, g.lattice(), "")?;
                let it = hyplat::nef::power_iterate_with(&g, &b, a.max_iter, a.iter_tol, true)?;
                v["power_iteration"] = report::power_iteration(&it);
            }
            Ok(v)
        }
        Command::Zariski(a) => {
            let dv = read_json(&a.d)?;
            let cv = read_json(&a.curves)?;
            let lattice = match (cv.get("lattice"), dv.get("lattice")) {
                (Some(l), _) => parse_lattice(l, "/lattice")?,
                (None, Some(l)) => parse_lattice(l, "/lattice")?,
                (None, None) => {
                    let n = dv
                        .get("coords")
                        .or(Some(&dv))
                        .and_then(Value::as_array)
                        .ok_or_else(|| Error::schema("", "expected {\"coords\": [...]}"))?
                        .len();
                    if n < 2 {
                        return Err(Error::schema("/coords", "need at least 2 coordinates").into());
                    }
                    Lattice::lorentzian(n - 1)?
                }
            };
            let d = parse_vector(&dv, &lattice, "")?;
            let cfg = parse_curves(&cv, &lattice, "")?;
            let z = hyplat::zariski::zariski_decompose(&d, &cfg)?;
            let mut v = report::zariski(&z);
            if let Some(trials) = a.probe {
                let p = hyplat::zariski::zariski_uniqueness_probe(&d, &cfg, trials, a.seed)?;
                v["probe"] = report::probe(&p);
            }
            Ok(v)
        }
        Command::Stab(a) => {
            let g = read_isometry(&a.g, cap)?;
            let mut out = serde_json::Map::new();
            if let Some(m) = &a.m {
                let m = parse_nf_vector(&read_json(m)?, g.lattice(), "")?;
                let rec = hyplat::stabilizer::multiplier(&g, &m)?;
                out.insert("multiplier".into(), report::multiplier(&rec, &tol));
            }
            if let Some(model) = &a.model {
                let model = parse_model(&read_json(model)?, Some(g.lattice()), "")?;
                out.insert("stab_set".into(), report::names(&hyplat::surface::stab_set(&g, &model)?));
            }
            Ok(Value::Object(out))
        }
        Command::Minimal(a) => {
            let g = read_isometry(&a.g, cap)?;
            let model = parse_model(&read_json(&a.model)?, Some(g.lattice()), "")?;
            Ok(report::minimality(&hyplat::surface::minimality_check(&g, &model)?))
        }
        Command::Blowdown(a) => {
            let g = read_isometry(&a.g, cap)?;
            let model = parse_model(&read_json(&a.model)?, Some(g.lattice()), "")?;
            let sigma = match &a.sigma {
                Some(s) => s.clone(),
                None => match hyplat::surface::minimality_check(&g, &model)? {
                    hyplat::surface::Minimality::NotMinimal(s) => s,
                    hyplat::surface::Minimality::Minimal => {
                        return Err(Error::InvalidArgument("model is minimal; nothing to contract".into()).into())
                    }
                },
            };
            let b = hyplat::surface::equivariant_blowdown(&g, &sigma, &model)?;
            let data = spectral_data_with_tolerance(&b.isometry, &tol)?;
            let mut v = report::blowdown(&b, &data, &tol);
            v["contracted"] = report::names(&sigma);
            Ok(v)
        }
        Command::Delta(a) => {
            let g = read_isometry(&a.g, cap)?;
            let model = parse_model(&read_json(&a.model)?, Some(g.lattice()), "")?;
            let r = hyplat::surface::anticanonical_delta(&g, &model)?;
            let diag = r.d_index.as_ref().map(hyplat::surface::index_diagnostic_for);
            Ok(report::stab_report(&r, diag.as_ref()))
        }
        Command::Coxeter(a) => {
            if let Some(t) = &a.table {
                let (from, to) = parse_range(t)?;
                if to + 1 > cap {
                    return Err(Error::DegreeTooLarge { degree: to + 1, max: cap }.into());
                }
                let rows = hyplat::weyl::coxeter_salem_table(from, to)?;
                return Ok(report::table(&rows, &tol));
            }
            let n = a.n.expect("clap enforces --n or --table");
            if n + 1 > cap {
                return Err(Error::DegreeTooLarge { degree: n + 1, max: cap }.into());
            }
            let r = hyplat::weyl::coxeter_element(n, a.order.as_deref())?;
            Ok(report::coxeter(&r, &tol))
        }
        Command::Multdep(a) => {
            let alphas = parse_algebraic_list(&read_json(&a.alphas)?, "")?;
            let d = hyplat::stabilizer::multiplier_generator_with(&alphas, cap)?;
            Ok(report::dependence(&d, &tol))
        }
        Command::Fixedray(a) => {
            let gens = parse_isometry_list(&read_json(&a.gens)?, "")?;
            check_rank(gens[0].lattice(), cap)?;
            let scan = if cli.word_bound > 0 { Some(hyplat::stabilizer::scan_words(&gens, cli.word_bound)?) } else { None };
            let r = hyplat::stabilizer::common_isotropic_fixed_ray(&gens)?;
            Ok(report::fixed_ray(&r, scan.as_ref(), &tol))
        }
        Command::Average(a) => {
            let group = parse_isometry_list(&read_json(&a.group)?, "")?;
            let lattice = group[0].lattice().clone();
            check_rank(&lattice, cap)?;
            let m = parse_vector(&read_json(&a.m)?, &lattice, "")?;
            let g = match &a.g {
                Some(p) => Some(parse_isometry(&read_json(p)?, &lattice, "")?),
                None => None,
            };
            let avg = hyplat::stabilizer::average_class_normalized_by(&m, &group, g.as_ref())?;
            Ok(report::average(&avg))
        }
    }
}

//! Command-line front end. [`run`] is the whole program minus process exit, so tests
//! can drive it in-process.

use clap::{Args, Parser, Subcommand, ValueEnum};
use orbitlab::error::Error;
use orbitlab::par::Exec;
use serde_json::{json, Map, Value};

mod commands;
pub mod parse;

pub const DEFAULT_SEED: u64 = 1;
pub const SEED_ENV: &str = "ORBITLAB_SEED";

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const ASSERTION_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const INCONCLUSIVE: i32 = 3;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
    Auto,
}

#[derive(Debug, Parser)]
#[command(
    name = "orbitlab",
    version,
    about = "Isotropic and Lagrangian orbits on flag manifolds"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Random seed; overrides ORBITLAB_SEED.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Arithmetic track; `auto` is exact where inputs are rational.
    #[arg(long, global = true, value_enum, default_value = "auto")]
    pub mode: ModeArg,
    /// Relative eigenvalue tolerance for orbit membership.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub spectral_tol: f64,
    /// Threshold on numeric residuals for pass/fail decisions.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub residual_tol: f64,
    /// Run sampled batches on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Annihilator test for the orbit of a subalgebra through a flag point.
    CheckIsotropy(commands::CheckIsotropy),
    /// The su(3) trichotomy for the centralizer of i·diag{2,-1,-1}.
    Su3CaseStudy,
    /// Isotropy of orbits in T*G for the lifted left and right actions.
    CotangentCheck(commands::CotangentCheck),
    /// Duality criterion for the diagonal action on a product of two flags.
    ProductDual(commands::ProductDual),
    /// Graph Lagrangian of a shifted diagonal: isotropy, rank and transitivity.
    ShiftedLagrangian(commands::ShiftedLagrangian),
    /// Isotopy between the graphs of two shifts.
    Isotopy(commands::Isotopy),
    /// Infinitesimal tightness reports.
    Tightness {
        #[command(subcommand)]
        which: commands::Tightness,
    },
    /// Moment-map, equivariance, nondegeneracy and Killing-form audit.
    KksAudit(commands::KksAudit),
    /// Best-effort search for isotropic orbits on products of several flags.
    MultiflagSearch(commands::MultiflagSearch),
}

/// Resolved configuration shared by all subcommands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub seed_source: &'static str,
    pub format: Format,
    pub mode: ModeArg,
    pub spectral_tol: f64,
    pub rank_tol: f64,
    pub residual_tol: f64,
    pub exec: Exec,
}

impl RunConfig {
    fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "seedSource": self.seed_source,
            "mode": match self.mode {
                ModeArg::Exact => "exact",
                ModeArg::Float => "float",
                ModeArg::Auto => "auto",
            },
            "tolerances": {
                "spectral": self.spectral_tol,
                "rank": self.rank_tol,
                "residual": self.residual_tol,
            },
        })
    }
}

/// What a subcommand produced before it is rendered.
pub struct Report {
    pub body: Value,
    pub code: i32,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn usage(msg: String) -> Outcome {
    Outcome {
        code: exit::USAGE,
        stdout: String::new(),
        stderr: msg,
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Inconsistency(_) | Error::Inconclusive(_) | Error::RegularityDisagreement { .. } => {
            exit::INCONCLUSIVE
        }
        _ => exit::USAGE,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Descriptor(_) => "descriptor",
        Error::Domain(_) => "domain",
        Error::RegularityDisagreement { .. } => "regularityDisagreement",
        Error::Inconsistency(_) => "inconsistency",
        Error::Inconclusive(_) => "inconclusive",
        Error::InfiniteSingularities(_) => "infiniteSingularities",
        Error::Precondition(_) => "precondition",
        Error::Parse(_) => "parse",
    }
}

/// Resolves the seed: `--seed`, then the environment value, then the default.
pub fn resolve_seed(flag: Option<u64>, env: Option<&str>) -> Result<(u64, &'static str), String> {
    if let Some(s) = flag {
        return Ok((s, "flag"));
    }
    match env {
        Some(v) => v
            .trim()
            .parse()
            .map(|s| (s, "env"))
            .map_err(|_| format!("{SEED_ENV}={v:?} is not an unsigned 64-bit integer")),
        None => Ok((DEFAULT_SEED, "default")),
    }
}

/// Runs one invocation. `argv[0]` is the program name; `env_seed` is the value of
/// `ORBITLAB_SEED`, if set.
pub fn run<I, T>(argv: I, env_seed: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: exit::PASS,
                        stdout: rendered,
                        stderr: String::new(),
                    }
                }
                _ => usage(rendered),
            };
        }
    };
    let g = &cli.global;
    let (seed, seed_source) = match resolve_seed(g.seed, env_seed) {
        Ok(s) => s,
        Err(m) => return usage(format!("error: {m}\n")),
    };
    for (name, v) in [
        ("--spectral-tol", g.spectral_tol),
        ("--residual-tol", g.residual_tol),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return usage(format!("error: {name} must be positive, got {v}\n"));
        }
    }
    let cfg = RunConfig {
        seed,
        seed_source,
        format: g.format,
        mode: g.mode,
        spectral_tol: g.spectral_tol,
        rank_tol: orbitlab::linalg::REL_RANK_TOL,
        residual_tol: g.residual_tol,
        exec: if g.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        },
    };
    let (name, result) = commands::dispatch(&cli.command, &cfg);
    let (mut body, code, notes, stderr) = match result {
        Ok(r) => (r.body, r.code, r.notes, String::new()),
        Err(e) => (
            json!({"error": {"kind": error_kind(&e), "message": e.to_string()}}),
            error_code(&e),
            Vec::new(),
            format!("error: {e}\n"),
        ),
    };
    if let Value::Object(map) = &mut body {
        map.insert("command".into(), Value::String(name.into()));
        map.insert("config".into(), cfg.to_json());
        map.insert("exitCode".into(), json!(code));
        map.insert("notes".into(), json!(notes));
    }
    let stdout = match cfg.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&body).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => render_text(&body),
    };
    Outcome {
        code,
        stdout,
        stderr,
    }
}

/// `path = value` lines for scalar leaves, in key order.
fn render_text(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                let m: &Map<String, Value> = m;
                for (k, x) in m {
                    let p = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&p, x, out);
                }
            }
            Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let items: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!("{prefix} = [{}]\n", items.join(", ")));
            }
            Value::Array(a) => {
                for (k, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}[{k}]"), x, out);
                }
            }
            other => out.push_str(&format!("{prefix} = {other}\n")),
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

//! Command line front end for the `superelliptic` library.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub mod commands;
pub mod config;
pub mod report;
pub mod reproduce;

pub use config::RunConfig;
pub use report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] superelliptic::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use superelliptic::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::LevelTooLarge { .. } | E::MissingCharpoly { .. } | E::CountingBudget { .. }) => 3,
            CliError::Core(E::Consistency(_)) => 4,
            _ => 1,
        }
    }

    /// Extra guidance printed after the message, if any.
    pub fn hint(&self) -> Option<&'static str> {
        use superelliptic::Error as E;
        match self {
            CliError::Core(E::LevelTooLarge { .. } | E::MissingCharpoly { .. }) => Some(
                "hint: supply externally computed Hecke polynomials with --cache <path>, one line per \
                 polynomial: heckepoly N=<level> ell=<prime> deg=<D> coeffs=<c0,...,cD>",
            ),
            CliError::Core(E::CountingBudget { .. }) => Some(
                "hint: raise --count-budget, or supply traces with --cache <path>, one line per value: \
                 trace <model-hash> <ell> <a_ell>",
            ),
            _ => None,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "superelliptic", version)]
#[command(about = "Exponent bounds, newform data and small exponent searches for (x-1)^k + x^k + (x+1)^k = z^n")]
pub struct Cli {
    #[command(flatten)]
    pub flags: Flags,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand. Each may also be set in `--config`.
#[derive(Args, Debug, Default)]
pub struct Flags {
    /// Flat key=value file; flags given on the command line win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub level: Option<String>,
    #[arg(long, global = true)]
    pub ell: Option<String>,
    /// Inclusive prime range, `A..B`.
    #[arg(long, global = true)]
    pub ell_range: Option<String>,
    #[arg(long, global = true)]
    pub alpha: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, global = true)]
    pub bound: Option<String>,
    /// Comma separated list.
    #[arg(long, global = true)]
    pub moduli: Option<String>,
    /// Trace cache for `traces`, Hecke polynomial cache otherwise.
    #[arg(long, global = true)]
    pub cache: Option<String>,
    #[arg(long, global = true)]
    pub newforms: Option<String>,
    /// `faithful` or `printed`.
    #[arg(long, global = true)]
    pub variant: Option<String>,
    #[arg(long, global = true)]
    pub jobs: Option<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub json: Option<String>,
    #[arg(long, global = true)]
    pub threshold: Option<String>,
    /// Largest level built from modular symbols.
    #[arg(long, global = true)]
    pub level_budget: Option<String>,
    /// Largest prime for point counting.
    #[arg(long, global = true)]
    pub count_budget: Option<String>,
}

impl Flags {
    fn to_map(&self) -> BTreeMap<String, String> {
        let pairs: [(&str, &Option<String>); 15] = [
            ("level", &self.level),
            ("ell", &self.ell),
            ("ell-range", &self.ell_range),
            ("alpha", &self.alpha),
            ("x", &self.x),
            ("bound", &self.bound),
            ("moduli", &self.moduli),
            ("cache", &self.cache),
            ("newforms", &self.newforms),
            ("variant", &self.variant),
            ("jobs", &self.jobs),
            ("json", &self.json),
            ("threshold", &self.threshold),
            ("level-budget", &self.level_budget),
            ("count-budget", &self.count_budget),
        ];
        pairs.into_iter().filter_map(|(k, v)| v.clone().map(|v| (k.to_string(), v))).collect()
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyArg {
    /// First Frey curve `E_{x,alpha}` for k = 5.
    K5e,
    /// Second Frey curve `F_{x,alpha}` for k = 5.
    K5f,
    /// The Frey curve `E_x` for k = 6.
    K6,
    /// `E'_{x^2,1}` from the cubic form recipe for k = 6.
    Bd,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a family's model and invariants, or a member's local data.
    Frey {
        #[arg(long, value_enum, default_value = "k6")]
        family: FamilyArg,
    },
    /// Table of a_ell for a family member or an explicit curve.
    Traces {
        #[arg(long, value_enum, default_value = "k6")]
        family: FamilyArg,
        /// `a1,a2,a3,a4,a6`, or one of F1..F4.
        #[arg(long, allow_hyphen_values = true)]
        curve: Option<String>,
    },
    /// Dimensions, class degrees and Hecke polynomials at `--level`.
    Modsym,
    #[command(subcommand)]
    Sieve(SieveCmd),
    #[command(subcommand)]
    Descent5(DescentCmd),
    #[command(subcommand)]
    Smallexp(SmallexpCmd),
    /// Whether `P(x) = z^n` is impossible modulo `--mod`.
    Obstruct {
        /// Ascending coefficients, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        n: u64,
    },
    /// Canned runs, e.g. `reproduce lemma-9.2`.
    Reproduce { id: String },
}

#[derive(Subcommand, Debug)]
pub enum SieveCmd {
    /// `B(f)` for every class in `--newforms`.
    Single {
        #[arg(long, value_enum, default_value = "k6")]
        family: FamilyArg,
    },
    /// `U(f, g)` for every pair of classes at levels `(L_alpha, M_alpha)`.
    Multi,
    /// Bounds from Hecke polynomials with the rational forms removed.
    Heckepoly {
        #[arg(long, value_enum, default_value = "k6")]
        family: FamilyArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum DescentCmd {
    /// The pair of quintic forms for `(alpha, c)`.
    System {
        #[arg(long, allow_hyphen_values = true)]
        c: i32,
    },
    /// Local solubility over every `(alpha, c)`.
    Sieve,
    /// Bounded search on the quintic `g(u, v) = rhs`.
    Thue {
        #[arg(long, allow_hyphen_values = true)]
        c: i32,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        rhs: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum SmallexpCmd {
    /// Integral points on the curves for exponent 2 or 3.
    Points {
        #[arg(long)]
        p: u32,
    },
}

/// Parse `argv` (including the program name) into the command and its
/// resolved configuration.
pub fn prepare<I, T>(argv: I) -> Result<(Command, RunConfig), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut layers = Vec::new();
    if let Some(path) = &cli.flags.config {
        layers.push(config::load_flat(path)?);
    }
    layers.push(cli.flags.to_map());
    Ok((cli.command, RunConfig::from_layers(&layers)?))
}

pub fn execute_parsed(command: &Command, cfg: &RunConfig) -> Result<Report, CliError> {
    let run = || commands::dispatch(command, cfg);
    match cfg.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(format!("jobs: {e}")))?
            .install(run),
        None => run(),
    }
}

/// Parse `argv` (including the program name) and run it.
pub fn execute<I, T>(argv: I) -> Result<Report, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (command, cfg) = prepare(argv)?;
    execute_parsed(&command, &cfg)
}

/// Run and print: JSON to stdout (or to `--json`), summary to stderr.
/// Returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    if let Err(e) = Cli::try_parse_from(&argv) {
        if !e.use_stderr() {
            print!("{e}");
            return 0;
        }
    }
    let result = prepare(&argv).and_then(|(command, cfg)| execute_parsed(&command, &cfg).map(|r| (r, cfg)));
    match result {
        Ok((report, cfg)) => {
            eprint!("{}", report.summary_text());
            let text = report.to_json();
            match cfg.json {
                Some(p) => {
                    if let Err(e) = std::fs::write(&p, text) {
                        eprintln!("error: {}: {e}", p.display());
                        return 1;
                    }
                }
                None => print!("{text}"),
            }
            0
        }
        Err(e) => {
            let msg = e.to_string();
            if msg.starts_with("error:") {
                eprint!("{msg}");
            } else {
                eprintln!("error: {msg}");
            }
            if let Some(h) = e.hint() {
                eprintln!("{h}");
            }
            e.exit_code()
        }
    }
}

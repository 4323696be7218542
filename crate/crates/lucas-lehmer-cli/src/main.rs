//! `lucas-lehmer`: enumerate Lucas and Lehmer pairs whose `n`-th term has
//! no primitive divisor, for `4 < n <= 30`, and scan larger `n` in a box.
//!
//! Exit codes: 0 success, 2 internal check failed, 3 unsupported input.

mod config;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lucas_lehmer::error::Error;

use crate::config::{ConfigError, Format, RunConfig};

/// Exit code for a failed internal consistency check.
const EXIT_INVARIANT: u8 = 2;
/// Exit code for input the program does not support.
const EXIT_UNSUPPORTED: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "lucas-lehmer", version, about = "Lucas and Lehmer sequences without primitive divisors")]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Flags {
    /// Flat `key = value` configuration file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Minimum working precision in decimal digits (at least 50).
    #[arg(long, global = true)]
    prec: Option<u32>,
    /// Box for scans and for `solve` beyond the catalogue: |x|, |y| < BOX.
    #[arg(long = "box", global = true)]
    scan_box: Option<String>,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also check every tabulated pair against the definition.
    #[arg(long = "check-direct", global = true)]
    check_direct: bool,
    /// Write the output to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the form F_n as `n d c_0 ... c_d`.
    Forms {
        /// Index.
        n: u32,
    },
    /// Solve F_n(x, y) in its admissible set (or = M) and classify the pairs.
    Solve {
        /// Index.
        n: u32,
        /// Restrict to one right-hand side.
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
    },
    /// Print the tables of Lucas and Lehmer pairs for 4 < n <= 30.
    Tables,
    /// Look for non-degenerate pairs for NMIN <= n <= NMAX inside the box.
    Scan {
        /// First index (at least 31).
        nmin: u32,
        /// Last index.
        nmax: u32,
    },
    /// Run the internal consistency checks.
    Selftest,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
enum Failure {
    Lib(Error),
    Config(ConfigError),
    Io(std::io::Error),
    Checks(usize),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(e) if e.is_unsupported() => EXIT_UNSUPPORTED,
            Failure::Lib(_) | Failure::Checks(_) => EXIT_INVARIANT,
            Failure::Config(_) | Failure::Io(_) => EXIT_UNSUPPORTED,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Config(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "{e}"),
            Failure::Checks(n) => write!(f, "{n} self-test check(s) failed"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn build_config(flags: &Flags) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &flags.config {
        cfg.apply_file(path)?;
    }
    if let Some(p) = flags.prec {
        cfg.precision = p;
    }
    if let Some(b) = &flags.scan_box {
        cfg.set("box", b, 0)?;
    }
    if let Some(t) = flags.threads {
        if t == 0 {
            return Err(ConfigError::Value { key: "threads".into(), reason: "at least one thread is needed".into() });
        }
        cfg.threads = t;
    }
    if flags.json {
        cfg.format = Format::Json;
    }
    if flags.check_direct {
        cfg.check_direct = true;
    }
    if let Some(o) = &flags.output {
        cfg.output = Some(o.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = build_config(&cli.flags)?;
    // A second initialisation fails harmlessly (only possible in tests).
    let _ = rayon::ThreadPoolBuilder::new().num_threads(cfg.resolved_threads()).build_global();
    let (text, failed_checks) = match cli.command {
        Command::Forms { n } => (report::forms(n)?, 0),
        Command::Solve { n, m } => (report::solve(n, m, &cfg)?, 0),
        Command::Tables => (report::tables(&cfg)?, 0),
        Command::Scan { nmin, nmax } => (report::scan(nmin, nmax, &cfg)?, 0),
        Command::Selftest => report::selftest(&cfg),
    };
    match &cfg.output {
        Some(path) => std::fs::write(path, &text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    if failed_checks > 0 {
        return Err(Failure::Checks(failed_checks));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_UNSUPPORTED } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}

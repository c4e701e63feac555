//! Command-line front end for `privmap`.
//!
//! Every command produces a [`Report`] and a [`Verdict`]. Exit codes are
//! `0` for an affirmative verdict, `1` for a definitive negative one and `2`
//! for any input error (bad flags, unreadable or malformed files, dimension
//! mismatches).

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use privmap::Tolerance;

pub mod commands;
pub mod demo;
pub mod report;

pub use report::Report;

#[derive(Debug, Clone, Parser)]
#[command(name = "privmap", version, about = "Verify private subsystems and their complementary codes")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Uniform absolute and relative tolerance for every approximate check.
    #[arg(long, global = true, env = "PRIVMAP_TOL")]
    pub tol: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report here instead of stdout. For `complement`, the output channel file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Rebuild a worked example from library builders and self-check it.
    Demo {
        /// two-qubit-dephasing, n-qubit-dephasing(N), depolarizing(N) or complementarity-failure.
        name: DemoName,
        /// Sample count for sampling demos.
        #[arg(long, requires = "seed", value_parser = clap::value_parser!(u64).range(1..))]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Decide privacy of a code for a channel, with a certificate when it holds.
    Certify {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        code: PathBuf,
        /// Density matrix on A; defaults to I/dim_a.
        #[arg(long)]
        sigma_a: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Subsystem)]
        mode: Mode,
    },
    /// Randomized search for a private subspace (informational, exits 0).
    Search {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Write the complementary channel to `--out`.
    Complement {
        #[arg(long)]
        channel: PathBuf,
    },
    /// Knill-Laflamme conditions for a subspace code.
    KlCheck {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        code: PathBuf,
    },
    /// Privacy for the channel next to correctability for its complement (informational).
    PairReport {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        sigma_a: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `dim_a = 1` codes only.
    Subspace,
    /// Privacy at one fixed `σ_A`.
    Subsystem,
    /// Privacy for every `σ_A`.
    Operator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DemoName {
    TwoQubitDephasing,
    NQubitDephasing(usize),
    Depolarizing(usize),
    ComplementarityFailure,
}

impl FromStr for DemoName {
    type Err = String;

    /// Parameters may be written `name(N)` or `name:N`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (base, arg) = if let Some(open) = s.find('(') {
            let inner = s[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| format!("unbalanced parenthesis in demo name {s:?}"))?;
            (&s[..open], Some(inner))
        } else if let Some((base, arg)) = s.split_once(':') {
            (base, Some(arg))
        } else {
            (s, None)
        };
        let param = |what: &str| -> Result<usize, String> {
            let raw = arg.ok_or_else(|| format!("demo {base} needs a parameter, e.g. {base}({what})"))?;
            raw.trim()
                .parse()
                .map_err(|_| format!("demo parameter must be a positive integer, got {raw:?}"))
        };
        let name = match base {
            "two-qubit-dephasing" => DemoName::TwoQubitDephasing,
            "complementarity-failure" => DemoName::ComplementarityFailure,
            "n-qubit-dephasing" => DemoName::NQubitDephasing(param("3")?),
            "depolarizing" => DemoName::Depolarizing(param("2")?),
            _ => {
                return Err(format!(
                    "unknown demo {s:?}; expected two-qubit-dephasing, n-qubit-dephasing(N), \
                     depolarizing(N) or complementarity-failure"
                ))
            }
        };
        if matches!(name, DemoName::TwoQubitDephasing | DemoName::ComplementarityFailure) && arg.is_some() {
            return Err(format!("demo {base} takes no parameter"));
        }
        Ok(name)
    }
}

impl fmt::Display for DemoName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DemoName::TwoQubitDephasing => f.write_str("two-qubit-dephasing"),
            DemoName::NQubitDephasing(n) => write!(f, "n-qubit-dephasing({n})"),
            DemoName::Depolarizing(n) => write!(f, "depolarizing({n})"),
            DemoName::ComplementarityFailure => f.write_str("complementarity-failure"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Affirmative,
    Negative,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Affirmative
        } else {
            Verdict::Negative
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Affirmative => 0,
            Verdict::Negative => 1,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Parse {
        path: PathBuf,
        source: privmap::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] privmap::Error),
}

impl CliError {
    pub const EXIT_CODE: u8 = 2;
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

impl RunConfig {
    pub fn tolerance(&self) -> Result<Tolerance, CliError> {
        match self.tol {
            None => Ok(Tolerance::default()),
            Some(t) => Tolerance::uniform(t).map_err(|e| CliError::Usage(format!("--tol: {e}"))),
        }
    }
}

/// Runs one command. The report is returned rather than printed.
pub fn run(config: &RunConfig) -> Result<(Report, Verdict), CliError> {
    let tol = config.tolerance()?;
    match &config.command {
        Command::Demo { name, trials, seed } => {
            let report = demo::run_demo(*name, *trials, *seed, tol)?;
            let verdict = Verdict::from_bool(report.passed());
            Ok((Report::Demo(report), verdict))
        }
        Command::Certify {
            channel,
            code,
            sigma_a,
            mode,
        } => commands::certify(channel, code, sigma_a.as_deref(), *mode, tol),
        Command::Search {
            channel,
            dim,
            trials,
            seed,
        } => commands::search(channel, *dim, *trials as usize, *seed),
        Command::Complement { channel } => {
            let out = config
                .out
                .as_deref()
                .ok_or_else(|| CliError::Usage("complement needs --out for the output channel".into()))?;
            commands::complement(channel, out, tol)
        }
        Command::KlCheck { channel, code } => commands::kl_check(channel, code, tol),
        Command::PairReport {
            channel,
            code,
            sigma_a,
        } => commands::pair_report(channel, code, sigma_a.as_deref(), tol),
    }
}

/// Parses arguments, runs, prints, and returns the process exit code.
pub fn main_with<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { CliError::EXIT_CODE } else { 0 };
        }
    };
    match run(&config) {
        Ok((report, verdict)) => {
            let rendered = match config.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            // complement already wrote its channel to --out
            let report_path = match config.command {
                Command::Complement { .. } => None,
                _ => config.out.as_deref(),
            };
            match report_path {
                Some(path) => {
                    if let Err(e) = write_file(path, &rendered) {
                        eprintln!("error: {e}");
                        return CliError::EXIT_CODE;
                    }
                }
                None => print!("{rendered}"),
            }
            verdict.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            CliError::EXIT_CODE
        }
    }
}

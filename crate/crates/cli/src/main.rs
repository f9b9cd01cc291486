mod args;
mod commands;

use std::fmt;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Parser;
use hyperlattice::report::Manifest;

use args::{Cli, Command};

/// A bad flag value that only shows up after parsing.
#[derive(Debug)]
pub struct UsageError {
    flag: &'static str,
    message: String,
}

impl UsageError {
    pub fn new(flag: &'static str, message: impl ToString) -> Self {
        Self {
            flag,
            message: message.to_string(),
        }
    }
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid value for {}: {}", self.flag, self.message)
    }
}

impl std::error::Error for UsageError {}

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// Library errors caused by the requested inputs rather than by a failed
/// computation.
fn is_input_error(e: &hyperlattice::Error) -> bool {
    use hyperlattice::Error::*;
    matches!(
        e,
        InvalidPoint { .. }
            | BoundTooLarge { .. }
            | SquareDiscriminant(_)
            | InvalidDiscriminant(_)
            | NotPrimitive { .. }
            | NotHyperbolic(_)
            | Domain(_)
            | OracleRange(_)
            | MalformedRow { .. }
    )
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Classical(_) => "classical",
        Command::Conj(_) => "conj",
        Command::Meanvalue(_) => "meanvalue",
        Command::Geoavg(_) => "geoavg",
        Command::Discavg(_) => "discavg",
        Command::HuberCheck(_) => "huber-check",
        Command::Signs(_) => "signs",
        Command::Hecke(_) => "hecke",
        Command::Epstein(_) => "epstein",
        Command::Spectral(_) => "spectral",
    }
}

fn dispatch(cli: &Cli, m: &mut Manifest) -> Result<commands::Output> {
    match &cli.command {
        Command::Classical(a) => commands::classical(a, cli.cache.as_deref(), m),
        Command::Conj(a) => commands::conj(a, m),
        Command::Meanvalue(a) => commands::meanvalue(a, m),
        Command::Geoavg(a) => commands::geoavg(a, m),
        Command::Discavg(a) => commands::discavg(a, m),
        Command::HuberCheck(a) => commands::huber_check(a, m),
        Command::Signs(a) => commands::signs(a, m),
        Command::Hecke(a) => commands::hecke(a, m),
        Command::Epstein(a) => commands::epstein(a, m),
        Command::Spectral(a) => commands::spectral(a, m),
    }
}

fn write_csv(cli: &Cli, csv: &str) -> Result<()> {
    match &cli.out {
        Some(p) => std::fs::write(p, csv).with_context(|| format!("writing {}", p.display())),
        None => std::io::stdout().lock().write_all(csv.as_bytes()).context("writing stdout"),
    }
}

fn write_manifest(cli: &Cli, manifest: &Manifest) -> Result<()> {
    let target = cli.manifest.clone().or_else(|| {
        cli.out.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(".manifest");
            PathBuf::from(s)
        })
    });
    match target {
        Some(p) => std::fs::write(&p, manifest.to_text()).with_context(|| format!("writing {}", p.display())),
        None => {
            eprint!("{}", manifest.to_text());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }

    let mut manifest = Manifest::new();
    manifest.set("command", command_name(&cli.command));
    manifest.set("threads", rayon::current_num_threads());
    let result = dispatch(&cli, &mut manifest);
    manifest.set("wall_time_s", format!("{:.3}", start.elapsed().as_secs_f64()));

    match result {
        Ok(out) => {
            manifest.set("check", if out.passed { "pass" } else { "fail" });
            if let Err(e) = write_csv(&cli, &out.csv).and_then(|_| write_manifest(&cli, &manifest)) {
                eprintln!("error: {e:#}");
                return ExitCode::from(EXIT_CHECK_FAILED);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("check failed; see the manifest for details");
                ExitCode::from(EXIT_CHECK_FAILED)
            }
        }
        Err(e) => {
            manifest.set("error", format!("{e:#}"));
            if let Err(w) = write_manifest(&cli, &manifest) {
                eprintln!("error: {w:#}");
            }
            eprintln!("error: {e:#}");
            let usage = e.downcast_ref::<UsageError>().is_some()
                || e.downcast_ref::<hyperlattice::Error>().is_some_and(is_input_error);
            if usage {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::from(EXIT_CHECK_FAILED)
            }
        }
    }
}

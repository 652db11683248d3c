//! Command-line front end for the spontaneous-emission observables library.
//!
//! Every subcommand reads one TOML configuration file and emits one result
//! table (CSV or JSON) to stdout or to a file; `oracle` writes three files.
//! Exit codes: 0 success, 1 configuration error, 2 numerical-convergence
//! failure. `EMISSION_THREADS` caps the worker-thread count.

mod commands;
mod config;
mod output;

use clap::{Args, Parser, Subcommand};
use config::Resolved;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Anything that can stop a run, mapped onto the process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Configuration problems: unreadable/invalid file, missing section,
    /// bad flag value.
    #[error("{0}")]
    Config(String),
    /// Errors surfaced by the computation itself.
    #[error(transparent)]
    Core(#[from] emission_core::Error),
    /// Output write failures.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for numerical-convergence failures, 1 for everything else.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(emission_core::Error::Convergence(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "emission",
    version,
    about = "Spontaneous-emission observables: energy and angular-momentum \
             budgets, radial energy density, a mode-bath oracle, and the \
             cyclotron analogue"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Atom/field/interaction energy budget over the time grid
    Energy(CommonArgs),
    /// Angular-momentum budget and the field's spin/orbital split
    Angmom(CommonArgs),
    /// Radial energy-density profiles at each requested time
    Density(CommonArgs),
    /// Mode-bath integration oracle; writes trajectory, spectrum, and
    /// summary files
    Oracle(CommonArgs),
    /// Landau-level decay analogue
    Cyclotron(CommonArgs),
}

impl Command {
    fn args(&self) -> &CommonArgs {
        match self {
            Command::Energy(a)
            | Command::Angmom(a)
            | Command::Density(a)
            | Command::Oracle(a)
            | Command::Cyclotron(a) => a,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// TOML run configuration
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Output file; stdout when omitted (oracle requires a path)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format: csv or json [default: csv]
    #[arg(long, value_name = "FMT")]
    format: Option<String>,
    /// Detuning window: pure or modified [default: modified]
    #[arg(long, value_name = "SCHEME")]
    scheme: Option<String>,
    /// Use the historically printed H = G field coefficient instead of the
    /// conservation-consistent one
    #[arg(long)]
    as_printed_hg_coefficient: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version go to stdout and succeed; usage errors are
            // configuration errors.
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let a = cli.command.args();
    let cfg = Resolved::load(
        &a.config,
        a.format.clone(),
        a.scheme.clone(),
        a.out.clone(),
        a.as_printed_hg_coefficient,
    )?;
    let format = cfg.format()?;

    if let Command::Oracle(_) = cli.command {
        let base = cfg.out_path().ok_or_else(|| {
            CliError::Config(
                "the oracle command writes three files and needs an output path \
                 (--out or [output] path)"
                    .into(),
            )
        })?;
        for (suffix, table) in commands::oracle::run(&cfg)? {
            std::fs::write(
                derived_path(&base, suffix, format.extension()),
                table.render(format),
            )?;
        }
        return Ok(());
    }

    let table = match cli.command {
        Command::Energy(_) => commands::energy::run(&cfg)?,
        Command::Angmom(_) => commands::angmom::run(&cfg)?,
        Command::Density(_) => commands::density::run(&cfg)?,
        Command::Cyclotron(_) => commands::cyclotron::run(&cfg)?,
        Command::Oracle(_) => unreachable!("handled above"),
    };
    let rendered = table.render(format);
    match cfg.out_path() {
        Some(path) => std::fs::write(path, rendered)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(rendered.as_bytes())?;
        }
    }
    Ok(())
}

/// Sibling path `{stem}_{suffix}.{ext}` next to `base`; the extension
/// always follows the chosen format, whatever `base` carries.
fn derived_path(base: &Path, suffix: &str, ext: &str) -> PathBuf {
    let stem = base
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("oracle");
    base.with_file_name(format!("{stem}_{suffix}.{ext}"))
}

/// Honor `EMISSION_THREADS` (positive integer) for the worker pool; any
/// other value is a configuration error.
fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("EMISSION_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| {
            CliError::Config(format!(
                "EMISSION_THREADS must be a positive integer, got {raw:?}"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(format!("cannot configure the thread pool: {e}")))
}

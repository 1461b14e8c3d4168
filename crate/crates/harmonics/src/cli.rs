use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Parser;

use crate::config::{Command, Format, JobConfig, Overrides, Target};
use crate::error::{CliError, Result};
use crate::jobs;
use crate::verify::IDENTITIES;

/// Harmonic analysis on SL(2,C), SU(2) and the Poincaré group: transforms,
/// convolutions and residual reports for the identities between them.
#[derive(Debug, Parser)]
#[command(name = "harmonics", version)]
pub struct Args {
    /// What to run; may also come from the config file.
    #[arg(value_enum)]
    pub command: Option<Command>,
    /// JSON job configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub jmax_twice: Option<u32>,
    /// Group for `plancherel`.
    #[arg(long, value_enum)]
    pub target: Option<Target>,
    /// JSON input for `decompose`, `wigner`, `transform-k`, `lorentz` and
    /// `convolve`; random inputs from the seed otherwise.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Where data commands write their residual report (`.json` for JSON,
    /// CSV otherwise). Without it the report goes to standard error.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Include full matrices in JSON spacetime tables.
    #[arg(long)]
    pub full: bool,
    /// Fill the `ms` column with wall-clock times.
    #[arg(long)]
    pub timing: bool,
    /// Print every verifiable identity and exit.
    #[arg(long)]
    pub list_identities: bool,
}

fn write_to(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::io(p, e)),
        None => std::io::stdout().write_all(bytes).map_err(|e| CliError::io("<stdout>", e)),
    }
}

/// Caps the global thread pool at `HARMONICS_THREADS` when set.
pub fn init_threads() -> Result<()> {
    let Ok(value) = std::env::var("HARMONICS_THREADS") else { return Ok(()) };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("HARMONICS_THREADS must be a positive integer, got {value:?}")))?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Runs one invocation; `Ok(true)` iff every report row passed.
pub fn run(args: Args) -> Result<bool> {
    if args.list_identities {
        let mut text = String::new();
        for id in IDENTITIES {
            text.push_str(&format!("{}\t{}\t{}\n", id.name, id.bound, id.paper_ref));
        }
        write_to(None, text.as_bytes())?;
        return Ok(true);
    }
    init_threads()?;
    let mut cfg = match &args.config {
        Some(p) => JobConfig::load(p)?,
        None => JobConfig::default(),
    };
    cfg.apply(Overrides {
        target: args.target,
        seed: args.seed,
        jmax_twice: args.jmax_twice,
        out: args.out,
        format: args.format,
        input: args.input,
        full: args.full,
        timing: args.timing,
    });
    cfg.validate()?;
    let command = args
        .command
        .or(cfg.command)
        .ok_or_else(|| CliError::Config("no command given on the command line or in the config".into()))?;
    let outcome = jobs::run(command, &cfg)?;
    let out = cfg.output.path.as_deref();
    match outcome.data {
        Some(data) => {
            write_to(out, &data)?;
            match &args.report {
                Some(p) => {
                    let format = if p.extension().is_some_and(|e| e == "json") { Format::Json } else { Format::Csv };
                    write_to(Some(p), &outcome.report.to_bytes(format)?)?;
                }
                None => eprint!("{}", outcome.report.summary()),
            }
        }
        None => write_to(out, &outcome.report.to_bytes(cfg.format())?)?,
    }
    Ok(outcome.report.all_pass())
}

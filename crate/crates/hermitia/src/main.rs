use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hermitia::commands::{self, CommandOutput};
use hermitia::config::MODE_ENV;
use hermitia::error::{HermitiaError, Result};
use hermitia::reproduce::Theorem;
use hermitia::scan::{parse_grid, Family, ScanSpec};
use hermitia::{Mode, OutputFormat, RunConfig};

/// Lie algebras, almost complex structures and their Gray-Hervella class.
#[derive(Debug, Parser)]
#[command(name = "hermitia", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Arithmetic mode. Defaults to $HERMITIA_MODE, then exact.
    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,
    /// Zero threshold in float mode; ignored in exact mode.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Add wall times to reproduce results. Makes output nondeterministic.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse an algebra file and check antisymmetry and the Jacobi identity.
    Validate { file: PathBuf },
    /// Classify the structure carried by an algebra file.
    Classify {
        file: PathBuf,
        /// Read the almost complex structure from this file.
        #[arg(long)]
        acs: Option<PathBuf>,
        /// Comma separated basis names spanning a vertical distribution.
        #[arg(long)]
        vertical: Option<String>,
    },
    /// Re-verify a family result on seeded random draws.
    Reproduce {
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 10)]
        draws: usize,
    },
    /// Tabulate class flags over a parameter grid or random points.
    Scan {
        #[arg(long, value_enum, default_value_t = Family::Unconstrained)]
        family: Family,
        /// `name=v1,v2;name=v;...`
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        grid: Option<String>,
        /// Number of random points.
        #[arg(long)]
        random: Option<usize>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| HermitiaError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn run(cli: Cli) -> Result<CommandOutput> {
    let env_mode = std::env::var(MODE_ENV).ok();
    let mut config = RunConfig::new(
        cli.mode,
        env_mode.as_deref(),
        cli.tol,
        cli.seed,
        cli.output,
        cli.format,
    )?;
    config.timings = cli.timings;
    match cli.command {
        Command::Validate { file } => commands::validate(&read(&file)?, &config),
        Command::Classify { file, acs, vertical } => {
            let acs = acs.as_deref().map(read).transpose()?;
            commands::classify_text(&read(&file)?, acs.as_deref(), vertical.as_deref(), &config)
        }
        Command::Reproduce { theorem, draws } => {
            commands::reproduce_theorem(theorem.parse::<Theorem>()?, draws, &config)
        }
        Command::Scan { family, grid, random } => {
            let spec = match (grid, random) {
                (Some(g), _) => ScanSpec::Grid(parse_grid(&g, family)?),
                (None, Some(n)) => ScanSpec::Random(n),
                (None, None) => unreachable!("clap requires one of --grid and --random"),
            };
            commands::scan_family(family, &spec, &config)
        }
    }
    .and_then(|out| {
        match &config.output {
            Some(path) => fs::write(path, &out.body)?,
            None => std::io::stdout().write_all(out.body.as_bytes())?,
        }
        Ok(out)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => ExitCode::from(out.exit_code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

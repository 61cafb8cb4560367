use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use forge_cli::commands::{self, FanFlags, MetricFlags, DEFAULT_TOLERANCE};
use forge_cli::{doc, CliError, Outcome};

#[derive(Parser)]
#[command(name = "forge", version, about = "Toric Sasaki-Einstein invariants from JSON documents")]
struct Cli {
    /// Emit the report as JSON instead of key=value lines.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Nondegeneracy, admissibility, minors and cohomology of a weight matrix.
    Weights { file: PathBuf },
    /// Invariants of an augmented fan.
    Fan {
        file: PathBuf,
        #[command(flatten)]
        flags: FanArgs,
    },
    /// Classify isotropy data and run the Sasaki chain on its Fano surface.
    Isotropy {
        file: PathBuf,
        /// Write the Fano fan document here.
        #[arg(long)]
        emit_fan: Option<PathBuf>,
    },
    /// Smoothness and Einstein arithmetic of a join.
    Join { file: PathBuf },
    /// Draw a fan (or the fan of isotropy data) as SVG.
    Render {
        file: PathBuf,
        /// Output path; standard output when omitted.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Numeric checks of the canonical toric metric.
    Metric {
        file: PathBuf,
        #[command(flatten)]
        flags: MetricArgs,
    },
}

#[derive(Args)]
struct FanArgs {
    #[arg(long)]
    einstein: bool,
    #[arg(long)]
    volume: bool,
    #[arg(long)]
    index: bool,
    #[arg(long)]
    smooth: bool,
    #[arg(long)]
    spin: bool,
}

#[derive(Args)]
struct MetricArgs {
    #[arg(long)]
    check_volume: bool,
    #[arg(long)]
    soliton: bool,
    /// Duality tolerance; overrides FORGE_TOLERANCE.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Quadrature grid size per axis.
    #[arg(long, default_value_t = 200)]
    grid: usize,
    /// Half-width of the quadrature box (default max(12, 6 max|u|)).
    #[arg(long)]
    cutoff: Option<f64>,
    /// Number of interior sample points for the duality check.
    #[arg(long, default_value_t = 25)]
    points: usize,
}

fn read(path: &Path) -> Result<doc::Document, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    doc::parse(&text)
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn tolerance(flag: Option<f64>) -> Result<f64, CliError> {
    if let Some(t) = flag {
        return Ok(t);
    }
    match std::env::var("FORGE_TOLERANCE") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("FORGE_TOLERANCE={s:?} is not a number"))),
        Err(_) => Ok(DEFAULT_TOLERANCE),
    }
}

fn run(cli: Cli) -> Result<Option<Outcome>, CliError> {
    let outcome = match cli.command {
        Command::Weights { file } => commands::cmd_weights(&read(&file)?)?,
        Command::Fan { file, flags } => {
            let f = FanFlags {
                einstein: flags.einstein,
                volume: flags.volume,
                index: flags.index,
                smooth: flags.smooth,
                spin: flags.spin,
            };
            commands::cmd_fan(&read(&file)?, f)?
        }
        Command::Isotropy { file, emit_fan } => {
            let (outcome, fan) = commands::cmd_isotropy(&read(&file)?)?;
            if let (Some(path), Some(fan)) = (emit_fan, fan) {
                write(&path, &doc::to_string(&fan))?;
            }
            outcome
        }
        Command::Join { file } => commands::cmd_join(&read(&file)?)?,
        Command::Render { file, svg } => {
            let text = commands::cmd_render(&read(&file)?)?;
            match svg {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
            return Ok(None);
        }
        Command::Metric { file, flags } => {
            let f = MetricFlags {
                check_volume: flags.check_volume,
                soliton: flags.soliton,
                tolerance: tolerance(flags.tolerance)?,
                grid: flags.grid,
                cutoff: flags.cutoff,
                points: flags.points,
            };
            commands::cmd_metric(&read(&file)?, f)?
        }
    };
    Ok(Some(outcome))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // usage errors are parse errors (exit 1); help and version exit 0
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(outcome)) => {
            for w in &outcome.report.warnings {
                eprintln!("warning: {w}");
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&outcome.report.to_json()).expect("plain JSON values"));
            } else {
                print!("{}", outcome.report.to_text());
            }
            if let Some(m) = &outcome.message {
                eprintln!("error: {m}");
            }
            ExitCode::from(outcome.status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use garside_cli::run::{DEFAULT_DEPTH, DEFAULT_FUEL};
use garside_cli::{run, CliError, Command, DotTarget, Options};

#[derive(Parser)]
#[command(name = "garside", version, about = "Normal forms, invariant subspaces and groupoid criteria for small categories")]
struct Cli {
    /// Spec file to read.
    spec: PathBuf,
    #[command(subcommand)]
    command: Cmd,
    /// Ball radius for bounded searches.
    #[arg(long, global = true, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
    /// Step budget for reversing.
    #[arg(long, global = true, default_value_t = DEFAULT_FUEL)]
    fuel: usize,
    /// Worker threads for enumerations and criterion checks.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the category axioms.
    Validate,
    /// Greedy normal form of a word.
    NormalForm { word: String },
    /// All closed invariant subspaces as pairs, with their Hasse diagram.
    Classify,
    /// The pair of the boundary.
    Boundary,
    /// Groupoid criteria: a criterion name or `all`.
    Check { criterion: String },
    /// Separator search for `u/v`, meaning `u v⁻¹`.
    Gc { fraction: String },
    /// Graphviz output.
    ExportDot {
        #[arg(value_enum)]
        target: Target,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Lattice,
    Skeleton,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            // CliError already embeds its source in the message.
            match e.downcast_ref::<CliError>() {
                Some(c) => {
                    eprintln!("error: {}", c);
                    ExitCode::from(c.exit_code() as u8)
                }
                None => {
                    eprintln!("error: {:#}", e);
                    ExitCode::from(1)
                }
            }
        }
    }
}

fn execute(cli: &Cli) -> anyhow::Result<i32> {
    let command = match &cli.command {
        Cmd::Validate => Command::Validate,
        Cmd::NormalForm { word } => Command::NormalForm(word.clone()),
        Cmd::Classify => Command::Classify,
        Cmd::Boundary => Command::Boundary,
        Cmd::Check { criterion } => Command::Check(criterion.clone()),
        Cmd::Gc { fraction } => Command::Gc(fraction.clone()),
        Cmd::ExportDot { target: Target::Lattice } => Command::ExportDot(DotTarget::Lattice),
        Cmd::ExportDot { target: Target::Skeleton } => Command::ExportDot(DotTarget::Skeleton),
    };
    let is_dot = matches!(command, Command::ExportDot(_));
    let format = cli.format.unwrap_or(if is_dot { Format::Dot } else { Format::Json });
    if matches!(format, Format::Dot) && !is_dot {
        return Err(CliError::Usage("--format dot only applies to export-dot".into()).into());
    }
    let text = fs::read_to_string(&cli.spec).with_context(|| format!("reading {}", cli.spec.display()))?;
    let opts = Options { depth: cli.depth, fuel: cli.fuel, jobs: cli.jobs, seed: cli.seed };
    let report = run(&command, &text, &opts)?;
    let output = match format {
        Format::Json => report.to_json(),
        Format::Text | Format::Dot => report.to_text(),
    };
    match &cli.out {
        Some(path) => fs::write(path, output).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{}", output),
    }
    Ok(report.exit_code)
}

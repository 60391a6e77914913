use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use uqc_cli::commands::{self, base_tolerances, CheckOptions, ConstructOptions, OutputFormat, RepairOptions};
use uqc_cli::{CliError, PROFILE_ENV};
use uqc_core::{AlgebraKind, BridgeSelection, BridgeStyle};

/// Decide, repair and construct universal qudit generator sets.
///
/// Tolerance tier: set UQC_TOLERANCE_PROFILE to strict, default or loose.
#[derive(Debug, Parser)]
#[command(name = "uqc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the coupling-graph universality check.
    Check {
        input: PathBuf,
        /// Also compute the Lie closure and report agreement.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        tau_edge: Option<f64>,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Add bridging generators until the coupling graph is connected.
    Repair {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = StyleArg::Antisym)]
        style: StyleArg,
        #[arg(long, value_enum, default_value_t = SelectionArg::Smallest)]
        selection: SelectionArg,
        /// Where to write the repaired input document.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        tau_edge: Option<f64>,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Write the two-generator universal set for a given dimension.
    Construct {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = AlgebraArg::U)]
        algebra: AlgebraArg,
        #[arg(long, value_enum, default_value_t = StyleArg::Antisym)]
        style: StyleArg,
        /// Comma-separated nonzero chain coefficients (d - 1 of them).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coefficients: Option<Vec<f64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report the small-step bound for every generator.
    Epsilon { input: PathBuf },
    /// Report the Lie closure of the set.
    Oracle {
        input: PathBuf,
        #[arg(long)]
        tau_edge: Option<f64>,
    },
}

#[derive(Debug, Args)]
#[group(multiple = false)]
struct FormatArgs {
    /// JSON output (default).
    #[arg(long)]
    json: bool,
    /// Human-readable output with an adjacency summary.
    #[arg(long)]
    text: bool,
}

impl FormatArgs {
    fn format(&self) -> OutputFormat {
        if self.text {
            OutputFormat::Text
        } else {
            OutputFormat::Json
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StyleArg {
    Antisym,
    Sym,
}

impl From<StyleArg> for BridgeStyle {
    fn from(s: StyleArg) -> Self {
        match s {
            StyleArg::Antisym => BridgeStyle::Antisymmetric,
            StyleArg::Sym => BridgeStyle::SymmetricImaginary,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SelectionArg {
    Smallest,
    PaperExample,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgebraArg {
    U,
    Su,
}

fn run(cli: Cli) -> Result<String, CliError> {
    let profile = std::env::var(PROFILE_ENV).ok();
    let base = base_tolerances(profile.as_deref())?;
    match cli.command {
        Command::Check {
            input,
            oracle,
            tau_edge,
            format,
        } => commands::check(
            &input,
            &CheckOptions {
                oracle,
                tau_edge,
                format: format.format(),
                base,
            },
        ),
        Command::Repair {
            input,
            style,
            selection,
            out,
            tau_edge,
            format,
        } => commands::repair(
            &input,
            &RepairOptions {
                style: style.into(),
                selection: match selection {
                    SelectionArg::Smallest => BridgeSelection::SmallestInside,
                    SelectionArg::PaperExample => BridgeSelection::LargestInside,
                },
                out,
                tau_edge,
                format: format.format(),
                base,
            },
        ),
        Command::Construct {
            dim,
            algebra,
            style,
            coefficients,
            out,
        } => commands::construct(&ConstructOptions {
            dim,
            algebra: match algebra {
                AlgebraArg::U => AlgebraKind::U,
                AlgebraArg::Su => AlgebraKind::SU,
            },
            style: style.into(),
            coefficients,
            out,
        }),
        Command::Epsilon { input } => commands::epsilon(&input, &base),
        Command::Oracle { input, tau_edge } => commands::oracle(&input, tau_edge, &base),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("uqc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

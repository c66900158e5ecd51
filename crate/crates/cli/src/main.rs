use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod error;
mod plot;
mod text;

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "kirwan", version, about = "Kirwan stratification and quotient analysis of torus actions on projective space")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
#[group(multiple = false)]
pub struct BetaChoice {
    /// β as an explicit vector, e.g. `1/2,-1`. Must be a member of B.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,

    /// β as a 0-based position in the sorted B list.
    #[arg(long)]
    pub beta_index: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the index set B with stratum data.
    Strata {
        input: PathBuf,
        /// Also list the stratum of every coordinate support.
        #[arg(long)]
        partition: bool,
    },
    /// Equivariant Poincaré series of the semistable set and Betti numbers of the quotient.
    Betti { input: PathBuf },
    /// Shifted quotient of an unstable stratum at level (1+ε)β.
    Quotient {
        input: PathBuf,
        #[command(flatten)]
        beta: BetaChoice,
        /// ε as `p/q`.
        #[arg(long, conflicts_with = "family", required_unless_present = "family", allow_hyphen_values = true)]
        epsilon: Option<String>,
        /// Report one quotient per ε-chamber.
        #[arg(long)]
        family: bool,
    },
    /// Sweep-cone membership and face data for a parabolic subset.
    Implosion {
        input: PathBuf,
        /// Simple-root indices (0-based), e.g. `0,2` or `[]`.
        #[arg(long, default_value = "")]
        sp: String,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
    },
    /// Draw weights, hulls and B for rank 1 or 2 as SVG.
    Plot {
        input: PathBuf,
        out: PathBuf,
        #[command(flatten)]
        beta: BetaChoice,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let report = match &cli.command {
        Command::Strata { input, partition } => commands::strata(input, *partition)?,
        Command::Betti { input } => commands::betti(input)?,
        Command::Quotient {
            input,
            beta,
            epsilon,
            family,
        } => commands::quotient(input, beta, epsilon.as_deref(), *family)?,
        Command::Implosion { input, sp, xi } => commands::implosion(input, sp, xi)?,
        Command::Plot { input, out, beta } => commands::plot(input, out, beta)?,
    };
    let rendered = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report is valid JSON");
            s.push('\n');
            s
        }
        Format::Text => text::render(&report),
    };
    match &cli.output {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

mod commands;
mod config;
mod output;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ds_zero::ds_generator::Theory;

use output::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    /// Rejected command line, already formatted by the parser.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ds_zero::Error),
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use ds_zero::Error as E;
        match self {
            CliError::Config(_) | CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Core(
                E::NonConvergence(_) | E::NoRootSelected(_) | E::Bracketing(_) | E::DegenerateSystem | E::SequenceTooShort { .. },
            ) => 3,
            CliError::Core(_) => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "ds-zero", version, about = "Truncated Dyson-Schwinger towers of zero-dimensional field theories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = 256)]
    pub precision: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Significant digits in numeric output; defaults to the certified digits.
    #[arg(long, global = true)]
    pub digits: Option<usize>,
    /// `key = value` file mirroring the long flags; flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Unbiased,
    Asymptotic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    LargestPositiveReal,
    PtNegativeImaginary,
}

#[derive(Args, Debug, Clone)]
pub struct TheoryArg {
    #[arg(long, value_parser = parse_theory)]
    pub theory: Theory,
}

#[derive(Args, Debug, Clone)]
pub struct Selection {
    /// Root selection policy; defaults to the theory's physical branch.
    #[arg(long, value_enum)]
    pub policy: Option<PolicyArg>,
    /// Keep only roots with `Re G_2 > 0`.
    #[arg(long)]
    pub spectral_positivity: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PcfMode {
    Taylor,
    Asymptotic,
    Scan,
    Exact,
    Count,
    Curve,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the DS tower.
    Generate {
        #[command(flatten)]
        theory: TheoryArg,
        #[arg(long, default_value_t = 8)]
        levels: usize,
        /// Drop the equations that vanish by parity.
        #[arg(long)]
        parity_reduce: bool,
        /// Bit-exact canonical polynomial text instead of the human form.
        #[arg(long)]
        canonical: bool,
    },
    /// Truncate at order `n` and eliminate to one polynomial.
    Eliminate {
        #[command(flatten)]
        theory: TheoryArg,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = SchemeArg::Unbiased)]
        scheme: SchemeArg,
    },
    /// Roots of the order-`n` polynomial with the selected physical root.
    Roots {
        #[command(flatten)]
        theory: TheoryArg,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = SchemeArg::Unbiased)]
        scheme: SchemeArg,
        #[command(flatten)]
        selection: Selection,
    },
    /// Roots for every order in a range, as CSV or JSON.
    Sweep {
        #[command(flatten)]
        theory: TheoryArg,
        #[arg(long, default_value_t = 1)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, value_enum, default_value_t = SchemeArg::Unbiased)]
        scheme: SchemeArg,
        #[command(flatten)]
        selection: Selection,
    },
    /// Exact Green's functions from the path integral.
    Exact {
        #[command(flatten)]
        theory: TheoryArg,
        #[arg(long, default_value_t = 10)]
        max_index: usize,
        /// Incoming ray in degrees; with `--outgoing` overrides the default contour.
        #[arg(long, allow_hyphen_values = true, requires = "outgoing")]
        incoming: Option<i64>,
        #[arg(long, allow_hyphen_values = true, requires = "incoming")]
        outgoing: Option<i64>,
        /// Also list every contour joining two sectors.
        #[arg(long)]
        all_contours: bool,
    },
    /// Growth model for the asymptotic closure.
    Asymptotic {
        #[command(flatten)]
        theory: TheoryArg,
        /// Fit the model to the exact table instead of the default source.
        #[arg(long)]
        fit: bool,
        #[arg(long, default_value_t = 40)]
        table_size: usize,
        #[arg(long, default_value_t = 8)]
        max_order: usize,
    },
    /// Richardson extrapolation of the selected root in `1/n`.
    Richardson {
        #[command(flatten)]
        theory: TheoryArg,
        #[arg(long, default_value_t = 1)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, value_enum, default_value_t = SchemeArg::Unbiased)]
        scheme: SchemeArg,
        #[command(flatten)]
        selection: Selection,
        #[arg(long, default_value_t = 6)]
        max_order: usize,
    },
    /// Zeros of the parabolic cylinder function and their polynomial approximations.
    Pcf {
        #[arg(long, value_enum)]
        mode: PcfMode,
        #[arg(long, default_value_t = 33)]
        degree: usize,
        #[arg(long, default_value_t = 5)]
        terms: usize,
        #[arg(long, default_value_t = 16)]
        max_terms: usize,
        /// Radius of the counting circle.
        #[arg(long, default_value_t = 4.0)]
        radius: f64,
    },
    /// Data behind a figure or a table.
    Report {
        #[arg(long, conflicts_with = "figure")]
        paper_table: Option<u8>,
        #[arg(long)]
        figure: Option<u8>,
        #[arg(long)]
        from: Option<usize>,
        #[arg(long)]
        to: Option<usize>,
    },
}

fn parse_theory(s: &str) -> Result<Theory, String> {
    s.parse::<Theory>().map_err(|e| e.to_string())
}

fn run(args: Vec<String>) -> Result<(), CliError> {
    let args = config::merge_config(args)?;
    let cli = Cli::try_parse_from(&args).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            use std::io::Write;
            let _ = write!(std::io::stdout(), "{e}");
            CliError::Usage(String::new())
        }
        _ => CliError::Usage(e.to_string().trim_start_matches("error: ").trim_end().to_string()),
    })?;
    commands::dispatch(&cli)
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) if msg.is_empty() => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ds-zero: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

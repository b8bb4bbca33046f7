//! `qlk`: build, audit, certify, encode and simulate QL_k and related CSS
//! codes.

mod commands;
mod header;
mod source;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use source::CodeArgs;

#[derive(Debug, Parser)]
#[command(
    name = "qlk",
    version,
    about = "Toolkit for the QL_k family of CSS codes"
)]
struct Cli {
    /// Worker threads for distance search and simulation (0 = all cores).
    /// Never changes any output.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Construct a code and optionally write HX.txt, HZ.txt and header.json.
    Build {
        #[command(flatten)]
        code: CodeArgs,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Commutation, rank and row-weight audits.
    Check {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Exhaustive logical-operator search up to --w-max.
    Distance {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 4)]
        w_max: usize,
    },
    /// Emit an encoding circuit and verify it on the stabilizer tableau.
    Circuit {
        #[command(flatten)]
        code: CodeArgs,
        /// Transcribe the published fan-out rules instead of the
        /// standard-form encoder.
        #[arg(long)]
        paper_literal: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Native)]
        format: FormatArg,
        /// Circuit file; without it the circuit goes to stdout and the
        /// verdict to stderr.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lookup-table decoding under iid depolarizing noise, as CSV.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 0.0)]
        p: f64,
        #[arg(long, default_value_t = 1000)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Distance used for t = (d-1)/2 when none is certified.
        #[arg(long)]
        assume_d: Option<usize>,
        /// Run every Pauli error of this weight instead of sampling.
        #[arg(long)]
        exhaustive_weight: Option<usize>,
        /// CSV file to append to (header written when the file is new).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Upper bound on enumerated errors per lookup table.
        #[arg(long, default_value_t = qlk_core::decoder::DEFAULT_TABLE_CAP)]
        table_cap: u128,
        /// Write the lookup tables to this binary file.
        #[arg(long, conflicts_with = "load_tables")]
        save_tables: Option<PathBuf>,
        /// Read the lookup tables from this binary file instead of building them.
        #[arg(long)]
        load_tables: Option<PathBuf>,
    },
    /// Write HX.alist and HZ.alist.
    ExportAlist {
        #[command(flatten)]
        code: CodeArgs,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Native,
    QasmLike,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
    Core(qlk_core::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(qlk_core::Error::Capacity { .. }) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<qlk_core::Error> for CliError {
    fn from(e: qlk_core::Error) -> Self {
        match e {
            qlk_core::Error::Domain(m) => CliError::Usage(m),
            e => CliError::Core(e),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Core(e.into())
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Build { code, out } => commands::build(&code, out.as_deref()),
        Command::Check { code } => commands::check(&code),
        Command::Distance { code, w_max } => commands::distance(&code, w_max),
        Command::Circuit {
            code,
            paper_literal,
            format,
            out,
        } => commands::circuit(
            &code,
            paper_literal,
            match format {
                FormatArg::Native => qlk_core::encoder::CircuitFormat::Native,
                FormatArg::QasmLike => qlk_core::encoder::CircuitFormat::QasmLike,
            },
            out.as_deref(),
        ),
        Command::Simulate {
            code,
            p,
            shots,
            seed,
            assume_d,
            exhaustive_weight,
            out,
            table_cap,
            save_tables,
            load_tables,
        } => commands::simulate(&commands::SimulateArgs {
            code,
            p,
            shots,
            seed,
            assume_d,
            exhaustive_weight,
            out,
            table_cap,
            save_tables,
            load_tables,
        }),
        Command::ExportAlist { code, out } => commands::export_alist(&code, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
    {
        eprintln!("cannot start thread pool: {e}");
        return ExitCode::from(1);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qlk: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

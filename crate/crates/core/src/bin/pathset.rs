use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pathset::cli::{self, CliError, Format, Options};
use pathset::polymatroid::DEFAULT_SUBSET_LIMIT;
use pathset::transform::DEFAULT_CUT_LIMIT;

#[derive(Parser)]
#[command(name = "pathset", version, about = "Compute attributes of directed path sets")]
struct Args {
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// Include per-column intermediates and full subset tables.
    #[arg(long, global = true)]
    verbose: bool,
    /// Largest path-set union (in edges) for cut enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_CUT_LIMIT)]
    cut_limit: usize,
    /// Largest path set tabulated over all its subsets (hard ceiling 16).
    #[arg(long, global = true, default_value_t = DEFAULT_SUBSET_LIMIT)]
    subset_limit: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one attribute on a path set.
    Compute {
        file: PathBuf,
        path_set: String,
        attribute: String,
    },
    /// Print the (r-)incidence matrix of a transformed path set.
    Matrix {
        file: PathBuf,
        path_set: String,
        /// identity, union or cuts
        transform: String,
        /// Value for non-member entries.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        r: f64,
        /// Edge property to place on member entries; omit for 0/1 incidence.
        #[arg(long)]
        property: Option<String>,
    },
    /// List the minimal cuts of a path set.
    Cuts { file: PathBuf, path_set: String },
    /// Check the polymatroid axioms of an attribute over all sub-path-sets.
    Polymatroid {
        file: PathBuf,
        path_set: String,
        attribute: String,
    },
    /// Load a document and summarize it.
    Validate { file: PathBuf },
}

fn run(args: Args) -> Result<String, CliError> {
    let options = Options {
        format: match args.format {
            FormatArg::Table => Format::Table,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        },
        verbose: args.verbose,
        cut_limit: args.cut_limit,
        subset_limit: args.subset_limit,
    };
    match &args.command {
        Command::Compute {
            file,
            path_set,
            attribute,
        } => cli::compute(file, path_set, attribute, &options),
        Command::Matrix {
            file,
            path_set,
            transform,
            r,
            property,
        } => cli::matrix(file, path_set, transform, *r, property.as_deref(), &options),
        Command::Cuts { file, path_set } => cli::cuts(file, path_set, &options),
        Command::Polymatroid {
            file,
            path_set,
            attribute,
        } => cli::polymatroid(file, path_set, attribute, &options),
        Command::Validate { file } => cli::validate(file, &options),
    }
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

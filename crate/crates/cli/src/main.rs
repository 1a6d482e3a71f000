use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quasiconst_cli::commands::{self, CliResult};
use quasiconst_cli::input::{self, parse_index_set, parse_side, parse_vector};
use quasiconst_cli::report::{table_markdown, table_tsv, Body};
use quasiconst_cli::{BoundsTarget, CliError, LoadedDatum, Predicate, Report};

/// Quasi-constant characters, ray duality and purity bounds for root data.
#[derive(Parser, Debug)]
#[command(name = "quasiconst", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct DatumArgs {
    /// JSON spec file.
    #[arg(long, conflicts_with = "kind")]
    spec: Option<PathBuf>,
    /// Type shorthand such as `C3` or `B2xB2`.
    #[arg(long = "type", short = 't')]
    kind: Option<String>,
    /// Lattice for `--type`: sc or adjoint.
    #[arg(long, default_value = "sc", requires = "kind")]
    lattice: String,
    /// Galois generators for `--type`, e.g. `swap:1..2,3..4` or `perm:3,2,1`.
    #[arg(long, requires = "kind")]
    galois: Option<String>,
}

impl DatumArgs {
    fn load(&self) -> CliResult<LoadedDatum> {
        match (&self.spec, &self.kind) {
            (Some(path), _) => Ok(input::load_spec_path(path)?),
            (None, Some(t)) => Ok(input::load_shorthand(t, &self.lattice, self.galois.as_deref())?),
            (None, None) => Err(CliError::Input(input::InputError::Field {
                field: "datum".into(),
                message: "pass --spec PATH or --type TYPE".into(),
            })),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum TableFormat {
    Tsv,
    Json,
    Markdown,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum PredicateName {
    Minuscule,
    Cominuscule,
    QuasiConstant,
    PClose,
    Ample,
    Admissible,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Roots, Cartan matrix, multiplicities and (co)special vertices.
    Describe {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Decide one predicate for a vector.
    Check {
        #[command(flatten)]
        datum: DatumArgs,
        /// `fw:[c1,...]` or `amb:[q1,...]`.
        vector: String,
        #[arg(long, value_enum)]
        predicate: PredicateName,
        /// Prime for p-close and admissible.
        #[arg(long)]
        p: Option<i64>,
        /// Simple roots of the Levi (1-based, comma separated).
        #[arg(long, default_value = "")]
        levi: String,
        #[arg(long, default_value = "character")]
        side: String,
        /// Require the vector to lie in the lattice.
        #[arg(long)]
        integral: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Classify a vector as quasi-constant or not, with certificate.
    Classify {
        #[command(flatten)]
        datum: DatumArgs,
        vector: String,
        #[arg(long, default_value = "character")]
        side: String,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Dual ray of a dominant quasi-constant ray.
    Dualize {
        #[command(flatten)]
        datum: DatumArgs,
        vector: String,
        /// Side of the input ray.
        #[arg(long, default_value = "cocharacter")]
        side: String,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Purity bounds for Levi subsets of an irreducible datum.
    Bounds {
        #[command(flatten)]
        datum: DatumArgs,
        /// Simple roots of the Levi (1-based).
        #[arg(long, conflicts_with_all = ["excluded", "all_maximal"])]
        levi: Option<String>,
        /// Simple roots outside the Levi (1-based).
        #[arg(long, conflicts_with = "all_maximal")]
        excluded: Option<String>,
        #[arg(long)]
        all_maximal: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Table of bounds for maximal Levis of all irreducible types.
    Table {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        #[arg(long, value_enum, default_value = "markdown")]
        format: TableFormat,
        /// Include one row per (type, vertex) in JSON output.
        #[arg(long)]
        per_vertex: bool,
    },
    /// Exhaustive checks: box search, duality suite or coroot chains.
    Verify {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, conflicts_with_all = ["duality", "chain"])]
        coeff_bound: Option<i64>,
        #[arg(long, conflicts_with = "chain")]
        duality: bool,
        /// Largest multiplier per Galois orbit of factors in the duality suite.
        #[arg(long, default_value_t = 1, requires = "duality")]
        max_multiplier: i64,
        #[arg(long)]
        chain: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
}

fn emit(report: &Report, format: ReportFormat) {
    match format {
        ReportFormat::Text => print!("{}", report.to_text()),
        ReportFormat::Json => println!("{}", report.to_json()),
    }
}

fn usage(message: &str) -> CliError {
    CliError::Input(input::InputError::Field { field: "arguments".into(), message: message.into() })
}

fn run(cli: Cli) -> CliResult<i32> {
    let (report, format) = match cli.command {
        Command::Describe { datum, format } => (commands::cmd_describe(&datum.load()?)?, format),
        Command::Check { datum, vector, predicate, p, levi, side, integral, format } => {
            let ld = datum.load()?;
            let v = parse_vector(&ld.datum, &vector, parse_side(&side)?)?;
            let levi = parse_index_set(&ld.datum, &levi)?;
            let need_p = || p.ok_or_else(|| usage("--p is required for this predicate"));
            let predicate = match predicate {
                PredicateName::Minuscule => Predicate::Minuscule,
                PredicateName::Cominuscule => Predicate::Cominuscule,
                PredicateName::QuasiConstant => Predicate::QuasiConstant,
                PredicateName::PClose => Predicate::PClose(need_p()?),
                PredicateName::Ample => Predicate::Ample(levi),
                PredicateName::Admissible => Predicate::Admissible(need_p()?, levi),
            };
            (commands::cmd_check(&ld, &v, &predicate, integral)?, format)
        }
        Command::Classify { datum, vector, side, format } => {
            let ld = datum.load()?;
            let v = parse_vector(&ld.datum, &vector, parse_side(&side)?)?;
            (commands::cmd_classify(&ld, &v)?, format)
        }
        Command::Dualize { datum, vector, side, format } => {
            let ld = datum.load()?;
            let v = parse_vector(&ld.datum, &vector, parse_side(&side)?)?;
            (commands::cmd_dualize(&ld, &v)?, format)
        }
        Command::Bounds { datum, levi, excluded, all_maximal, format } => {
            let ld = datum.load()?;
            let target = match (levi, excluded, all_maximal) {
                (Some(l), _, _) => BoundsTarget::Levi(parse_index_set(&ld.datum, &l)?),
                (_, Some(x), _) => BoundsTarget::Excluded(parse_index_set(&ld.datum, &x)?),
                (_, _, true) => BoundsTarget::AllMaximal,
                _ => return Err(usage("pass --levi, --excluded or --all-maximal")),
            };
            (commands::cmd_bounds(&ld, &target)?, format)
        }
        Command::Table { max_rank, format, per_vertex } => {
            let report = commands::cmd_table(max_rank, per_vertex)?;
            let Body::Table(table) = &report.body else { unreachable!("table command builds a table") };
            match format {
                TableFormat::Tsv => print!("{}", table_tsv(table)),
                TableFormat::Markdown => print!("{}", table_markdown(table)),
                TableFormat::Json => println!("{}", report.to_json()),
            }
            return Ok(report.exit_code());
        }
        Command::Verify { datum, coeff_bound, duality, max_multiplier, chain, format } => {
            let ld = datum.load()?;
            let report = match (coeff_bound, duality, chain) {
                (Some(b), _, _) => commands::cmd_verify_box(&ld, b)?,
                (_, true, _) => commands::cmd_verify_duality(&ld, max_multiplier)?,
                (_, _, true) => commands::cmd_verify_chain(&ld)?,
                _ => return Err(usage("pass --coeff-bound B, --duality or --chain")),
            };
            (report, format)
        }
    };
    emit(&report, format);
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("QUASICONST_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        super::Cli::command().debug_assert();
    }
}

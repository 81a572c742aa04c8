//! `diatomic`: catalog management, level grids, reference-table reproduction
//! and oracle verification.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use diatomic_spectra::table2::{load_reference, DEFAULT_TOLERANCE};
use diatomic_spectra::verify::{DEFAULT_ANGULAR_POINTS, DEFAULT_RADIAL_POINTS};
use diatomic_spectra::{
    levels_report, load_catalog, Catalog, CatalogFormat, DiagnosticKind, Error, LevelGrid,
    OutputFormat, Parity, PotentialKind, ReportMetadata, Suite, VerifyOptions,
};

mod output;
mod range;

#[derive(Debug, Parser)]
#[command(
    name = "diatomic",
    version,
    about = "Bound-state energies of diatomic molecules in Morse and Kratzer potentials with a ring-shaped angular term"
)]
struct Cli {
    /// Molecule catalog (CSV or JSON); defaults to the bundled ten molecules.
    #[arg(long, global = true, value_name = "PATH")]
    catalog: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Write to a file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Table => OutputFormat::Table,
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inspect or validate the molecule catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Energies over a grid of quantum numbers for one molecule.
    Levels(LevelsArgs),
    /// Recompute the bundled reference energies and compare.
    Table2(Table2Args),
    /// Check the closed forms against the finite-difference oracle.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    List,
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PotentialArg {
    Morse,
    Kratzer,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

#[derive(Debug, clap::Args)]
struct LevelsArgs {
    #[arg(long)]
    molecule: String,

    #[arg(long, value_enum, default_value_t = PotentialArg::Both)]
    potential: PotentialArg,

    /// Radial quanta, `a..b` inclusive or a single value.
    #[arg(long, default_value = "0", value_parser = range::quanta)]
    n: std::ops::RangeInclusive<u32>,

    /// Angular oscillation quanta ñ.
    #[arg(long, default_value = "0", value_parser = range::quanta)]
    ntilde: std::ops::RangeInclusive<u32>,

    /// Magnetic quantum numbers; negative values allowed.
    #[arg(long, default_value = "0", value_parser = range::signed, allow_hyphen_values = true)]
    m: std::ops::RangeInclusive<i32>,

    /// Strength of the 1/sin²θ term.
    #[arg(long = "A", value_name = "A")]
    a: f64,

    /// Strength of the 1/cos²θ term.
    #[arg(long = "B", value_name = "B")]
    b: f64,

    /// Solution family when B = 0.
    #[arg(long, value_enum, default_value_t = ParityArg::Even)]
    parity: ParityArg,
}

#[derive(Debug, clap::Args)]
struct Table2Args {
    /// Largest accepted |computed − reference| in eV.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,

    #[arg(long)]
    molecule: Option<String>,

    /// Reference table to compare against instead of the bundled one.
    #[arg(long, value_name = "PATH")]
    reference: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Angular,
    Kratzer,
    MorsePekeris,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Angular => Suite::Angular,
            SuiteArg::Kratzer => Suite::Kratzer,
            SuiteArg::MorsePekeris => Suite::MorsePekeris,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,

    #[arg(long)]
    molecule: Option<String>,

    /// Finest grid for every oracle solve (multiple of 4); defaults to
    /// 4096 radial and 2048 angular points.
    #[arg(long, value_name = "N")]
    grid_points: Option<usize>,

    /// Same as `--format json`.
    #[arg(long)]
    json: bool,
}

/// Failure with the process exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn numeric(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonQuantized { .. } | Error::UnboundLevel { .. } => {
                Failure::numeric(e.to_string())
            }
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

/// Exit status of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    Mismatch,
    NotConverged,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(match s {
            Status::Ok => 0,
            Status::Mismatch => 1,
            Status::NotConverged => 3,
        })
    }
}

fn timestamp() -> String {
    let at = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.parse::<i64>().ok())
        .and_then(|secs| chrono::DateTime::from_timestamp(secs, 0))
        .unwrap_or_else(chrono::Utc::now);
    at.to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

fn open_catalog(path: Option<&PathBuf>) -> Result<Catalog, Failure> {
    match path {
        None => Ok(Catalog::bundled()),
        Some(p) => {
            let file =
                File::open(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?;
            load_catalog(file, CatalogFormat::from_path(p))
                .map_err(|e| Failure::usage(format!("{}: {e}", p.display())))
        }
    }
}

fn sink(path: Option<&PathBuf>) -> Result<Box<dyn Write>, Failure> {
    match path {
        None => Ok(Box::new(io::stdout().lock())),
        Some(p) => File::create(p)
            .map(|f| Box::new(io::BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
    }
}

fn cmd_catalog(cli: &Cli, action: &CatalogAction) -> Result<Status, Failure> {
    let catalog = open_catalog(cli.catalog.as_ref())?;
    let mut out = sink(cli.output.as_ref())?;
    match action {
        CatalogAction::List => {
            output::catalog(&mut out, &catalog, cli.format.into())?;
            out.flush()?;
            Ok(Status::Ok)
        }
        CatalogAction::Validate => {
            output::validation(&mut out, &catalog, cli.format.into())?;
            out.flush()?;
            if catalog.has_rejections() {
                return Err(Failure::usage("catalog has rejected rows"));
            }
            Ok(Status::Ok)
        }
    }
}

fn cmd_levels(cli: &Cli, args: &LevelsArgs) -> Result<Status, Failure> {
    let catalog = open_catalog(cli.catalog.as_ref())?;
    let p = catalog
        .get(&args.molecule)
        .ok_or_else(|| Failure::usage(format!("unknown molecule `{}`", args.molecule)))?;
    let potentials = match args.potential {
        PotentialArg::Morse => vec![PotentialKind::Morse],
        PotentialArg::Kratzer => vec![PotentialKind::Kratzer],
        PotentialArg::Both => vec![PotentialKind::Morse, PotentialKind::Kratzer],
    };
    let grid = LevelGrid {
        potentials,
        n: args.n.clone(),
        ntilde: args.ntilde.clone(),
        m: args.m.clone(),
        a: args.a,
        b: args.b,
        parity: match args.parity {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        },
    };
    let mut report = levels_report(p, &grid, ReportMetadata::new(catalog.hash(), timestamp()))?;
    for d in catalog.diagnostics.iter().filter(|d| d.molecule == p.name) {
        report.push_diagnostic(DiagnosticKind::Catalog, d.to_string());
    }
    let mut out = sink(cli.output.as_ref())?;
    report.write(&mut out, cli.format.into())?;
    out.flush()?;
    Ok(Status::Ok)
}

fn cmd_table2(cli: &Cli, args: &Table2Args) -> Result<Status, Failure> {
    let catalog = open_catalog(cli.catalog.as_ref())?;
    let reference = match &args.reference {
        None => diatomic_spectra::bundled_reference(),
        Some(p) => {
            let file = File::open(p)
                .map_err(|e| Failure::numeric(format!("reference data {}: {e}", p.display())))?;
            load_reference(file)
                .map_err(|e| Failure::numeric(format!("reference data {}: {e}", p.display())))?
        }
    };
    let report =
        diatomic_spectra::reproduce(&catalog, &reference, args.tol, args.molecule.as_deref())?;
    let mut out = sink(cli.output.as_ref())?;
    output::table2(&mut out, &report, cli.format.into())?;
    out.flush()?;
    Ok(if report.all_passed() {
        Status::Ok
    } else {
        Status::Mismatch
    })
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<Status, Failure> {
    let catalog = open_catalog(cli.catalog.as_ref())?;
    let options = VerifyOptions {
        suite: args.suite.into(),
        molecule: args.molecule.clone(),
        radial_points: args.grid_points.unwrap_or(DEFAULT_RADIAL_POINTS),
        angular_points: args.grid_points.unwrap_or(DEFAULT_ANGULAR_POINTS),
    };
    let report = diatomic_spectra::verify::run(&catalog, &options)?;
    let format = if args.json {
        OutputFormat::Json
    } else {
        cli.format.into()
    };
    let mut out = sink(cli.output.as_ref())?;
    output::verify(&mut out, &report, format)?;
    out.flush()?;
    use diatomic_spectra::Outcome;
    Ok(match report.outcome {
        Outcome::Pass => Status::Ok,
        Outcome::ComparisonFailed => Status::Mismatch,
        Outcome::NotConverged => {
            let mut err = io::stderr().lock();
            writeln!(
                err,
                "oracle did not converge (observed order outside [1.5, 2.5]):"
            )?;
            output::convergence_table(&mut err, &report)?;
            Status::NotConverged
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Catalog { action } => cmd_catalog(&cli, action),
        Command::Levels(args) => cmd_levels(&cli, args),
        Command::Table2(args) => cmd_table2(&cli, args),
        Command::Verify(args) => cmd_verify(&cli, args),
    };
    match result {
        Ok(status) => status.into(),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

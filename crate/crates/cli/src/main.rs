//! `unram`: cohomology, residue kernels and unramified invariants of small
//! finite groups from the command line.

mod render;
mod run;
mod store;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use unram_core::exactla::LinAlgError;
use unram_core::groups::{catalog, parse_group_file, Family};
use unram_core::residues::SubgroupFamily;
use unram_core::{Engine, Error, FiniteGroup};

use crate::store::DiskStore;

#[derive(Parser)]
#[command(name = "unram", version, about = "Group cohomology, residues and unramified invariants of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// H^n(G, Z/m), or H^n(G, Q/Z) with --stabilize.
    Cohomology {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        coeff: Coefficients,
        /// Include a cocycle for every generator (values on tuples of
        /// non-identity elements, lexicographic in element indices).
        #[arg(long)]
        emit_generators: bool,
    },
    /// Bogomolov multiplier B0(G), by residues and by bicyclic restrictions.
    B0 {
        #[command(flatten)]
        common: Common,
    },
    /// Classes killed by every residue map (Z_G(s), s).
    Nr {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        coeff: Coefficients,
    },
    /// Classes killed by restriction to every member of a subgroup family.
    Nab {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        coeff: Coefficients,
        #[arg(long, default_value_t = SubgroupFamily::Abelian)]
        family: SubgroupFamily,
    },
    /// Degree-3 residue kernel modulo permutation-negligible classes.
    H3 {
        #[command(flatten)]
        common: Common,
    },
    /// Refined-sequence checks and the Leibniz rule for residues of cup products.
    Check {
        #[command(flatten)]
        common: Common,
        /// Degrees of the refined-sequence checks (2 and 3 by default).
        #[arg(long = "degree", short = 'n')]
        degrees: Vec<usize>,
    },
    /// Everything affordable for the group's order.
    Report {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Group file, or a catalog family such as `dihedral:8`.
    #[arg(required_unless_present = "catalog")]
    source: Option<String>,
    /// Catalog family, as an alternative to SOURCE.
    #[arg(long, conflicts_with = "source")]
    catalog: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, env = "UNRAM_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    no_cache: bool,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, short)]
    jobs: Option<usize>,
    /// Leave timings out of the report, making output reproducible.
    #[arg(long)]
    no_timings: bool,
    /// Work budget for a single cochain chart.
    #[arg(long, default_value_t = unram_core::engine::DEFAULT_CHART_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct Coefficients {
    #[arg(long = "degree", short = 'n')]
    degrees: Vec<usize>,
    /// Coefficient modulus (defaults to |G|).
    #[arg(long, short)]
    modulus: Option<u64>,
    /// Pass to Q/Z coefficients; the modulus must then be a multiple of |G|.
    #[arg(long)]
    stabilize: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

pub enum Failure {
    Usage(String),
    Core(Error),
    Checks(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Checks(_) => 3,
            Failure::Core(e) => match e {
                Error::BudgetExceeded { .. } | Error::LinAlg(LinAlgError::DimensionTooLarge { .. }) => 2,
                Error::Group(_)
                | Error::Parse(_)
                | Error::PreconditionViolated(_)
                | Error::DegreeZero
                | Error::LinAlg(LinAlgError::BadModulus(_)) => 1,
                _ => 3,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
            Failure::Checks(n) => format!("{n} check(s) failed"),
        }
    }
}

fn load_group(common: &Common) -> Result<Arc<FiniteGroup>, Failure> {
    let spec = common.catalog.as_deref().or(common.source.as_deref()).unwrap_or_default();
    let path = PathBuf::from(spec);
    if common.catalog.is_none() && path.is_file() {
        let text = fs::read_to_string(&path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let g = parse_group_file(&text).map_err(|e| Failure::Usage(format!("{}:{e}", path.display())))?;
        return Ok(Arc::new(g));
    }
    let family_text = spec.trim().strip_prefix("catalog").map_or(spec, str::trim);
    let family: Family = family_text.parse().map_err(|e| {
        if common.catalog.is_none() && !spec.contains(':') {
            Failure::Usage(format!("`{spec}` is neither a readable file nor a catalog family"))
        } else {
            Failure::Usage(format!("{e}"))
        }
    })?;
    Ok(Arc::new(catalog(&family).map_err(|e| Failure::Usage(e.to_string()))?))
}

fn engine(common: &Common) -> Result<Engine, Failure> {
    let e = Engine::new().with_budget(common.budget);
    match (&common.cache_dir, common.no_cache) {
        (Some(dir), false) => {
            let store = DiskStore::open(dir)
                .map_err(|err| Failure::Usage(format!("cache directory {}: {err}", dir.display())))?;
            Ok(e.with_store(Arc::new(store)))
        }
        _ => Ok(e),
    }
}

fn execute(cli: Cli) -> Result<(), Failure> {
    let common = match &cli.command {
        Command::Cohomology { common, .. }
        | Command::B0 { common }
        | Command::Nr { common, .. }
        | Command::Nab { common, .. }
        | Command::H3 { common }
        | Command::Check { common, .. }
        | Command::Report { common } => common,
    };
    if let Some(n) = common.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(format!("--jobs: {e}")))?;
    }
    let g = load_group(common)?;
    let e = engine(common)?;
    let mut report = run::Report::new(&g);
    match &cli.command {
        Command::Cohomology { coeff, emit_generators, .. } => {
            let (degrees, m) = run::coefficients(&g, &coeff.degrees, coeff.modulus, coeff.stabilize, &[1, 2])?;
            run::cohomology(&e, &g, &degrees, m, coeff.stabilize, *emit_generators, &mut report)?
        }
        Command::B0 { .. } => run::b0(&e, &g, &mut report)?,
        Command::Nr { coeff, .. } => {
            let (degrees, m) = run::coefficients(&g, &coeff.degrees, coeff.modulus, coeff.stabilize, &[2])?;
            run::nr(&e, &g, &degrees, m, coeff.stabilize, &mut report)?
        }
        Command::Nab { coeff, family, .. } => {
            let (degrees, m) = run::coefficients(&g, &coeff.degrees, coeff.modulus, coeff.stabilize, &[2])?;
            run::nab(&e, &g, &degrees, m, coeff.stabilize, *family, &mut report)?
        }
        Command::H3 { .. } => run::h3(&e, &g, &mut report)?,
        Command::Check { degrees, .. } => {
            let degrees = if degrees.is_empty() { vec![2, 3] } else { degrees.clone() };
            run::check(&e, &g, &degrees, &mut report)?
        }
        Command::Report { .. } => run::full_report(&e, &g, &mut report)?,
    }
    if common.no_timings {
        report.timings = None;
    }
    let text = match common.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("reports serialize") + "\n",
        Format::Text => render::text(&report),
    };
    match &common.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => {
            let mut out = std::io::stdout().lock();
            // a closed pipe is not worth an error message
            let _ = out.write_all(text.as_bytes());
        }
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    if failed > 0 {
        return Err(Failure::Checks(failed));
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

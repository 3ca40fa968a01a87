use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use goldbach_lab::hamilton::fixtures::{builtin_fixtures, verify_fixtures, FixtureSet};
use goldbach_lab::sweep::{run_sweep, SweepManifest, SweepOptions};
use goldbach_lab::{
    build_graph, ham_cycle, ham_path, verify_certificate, EvenGraph, Family, GraphSpec, OddSetKind, Status,
};

mod analyze;
mod export;

const THREADS_VAR: &str = "GOLDBACH_LAB_THREADS";

#[derive(Parser)]
#[command(name = "goldbach-lab", version, about = "Odd-even graphs, Hamiltonian certificates and diameter sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and print its adjacency lists.
    Build {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Report counts, structure, girth, diameter and induced cycles.
    Analyze(analyze::AnalyzeArgs),
    /// Print a Hamiltonian cycle (or path) of G(3,n), G(5,n) or G(3,5,n).
    Ham {
        /// pmm3, pmm5 or g35.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: u64,
        /// A Hamiltonian path instead of a cycle; any n >= 1.
        #[arg(long)]
        path: bool,
        /// Check the certificate against the built graph.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Verify a fixture file (or the builtin set) and compare it with the constructors.
    VerifyFixtures {
        /// Fixture file in `family:n:v1,...` form; the builtin set when omitted.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Sweep connectivity and diameter over a range of n, resuming where a previous run stopped.
    Sweep(SweepArgs),
    /// Export a graph as DOT, an edge list or a biadjacency matrix.
    Export {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum)]
        format: ExportFormat,
        /// Write here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
pub struct GraphArgs {
    /// pmm<p>, g35, intersect:<p,q,...>, near-goldbach, goldbach or explicit:<odd,...>.
    #[arg(long, required_unless_present = "primes", conflicts_with = "primes")]
    kind: Option<String>,
    /// Prime list; one prime gives pmm<p>, several their intersection.
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    #[arg(long)]
    n: u64,
}

impl GraphArgs {
    fn spec(&self) -> Result<GraphSpec, CliError> {
        let kind = match (&self.kind, &self.primes) {
            (Some(kind), _) => kind.parse::<OddSetKind>().map_err(CliError::usage)?,
            (None, Some(ps)) if ps.len() == 1 => OddSetKind::PrimeMultipleMissing(ps[0]),
            (None, Some(ps)) => OddSetKind::PrimeIntersection(ps.clone()),
            (None, None) => return Err(CliError::Usage("one of --kind or --primes is required".into())),
        };
        GraphSpec::new(kind, self.n).map_err(CliError::usage)
    }

    fn build(&self) -> Result<EvenGraph, CliError> {
        Ok(build_graph(&self.spec()?)?)
    }
}

#[derive(Args)]
struct SweepArgs {
    /// Kinds to sweep; repeat the flag for several. Defaults to near-goldbach and goldbach.
    #[arg(long = "kind")]
    kinds: Vec<String>,
    #[arg(long, default_value_t = 1)]
    from: u64,
    #[arg(long)]
    to: Option<u64>,
    #[arg(long, default_value_t = 1)]
    step: u64,
    /// CSV output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON manifest; an existing manifest is resumed and the range flags are ignored.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Consecutive n values computed from one built graph.
    #[arg(long, default_value_t = 32)]
    chunk: usize,
    #[arg(long)]
    quiet: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Dot,
    EdgeCsv,
    Biadjacency,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments; exit 2.
    Usage(String),
    /// A certificate or fixture failed; exit 1.
    Verification(String),
    Lib(goldbach_lab::Error),
    Io(io::Error),
}

impl CliError {
    pub fn usage(e: impl fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }

    fn exit_code(&self) -> u8 {
        use goldbach_lab::Error as E;
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Lib(e) => match e {
                E::Domain(_) | E::Capacity { .. } | E::Layout(_) | E::Mismatch(_) => 2,
                E::Io(_) | E::Csv(_) | E::Json(_) | E::Parse { .. } => 3,
                _ => 1,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Verification(m) => f.write_str(m),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<goldbach_lab::Error> for CliError {
    fn from(e: goldbach_lab::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Lib(e.into())
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_VAR} must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(CliError::usage)
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cmd_build(args: &GraphArgs, format: Format) -> Result<(), CliError> {
    let g = args.build()?;
    let mut out = open_output(None)?;
    match format {
        Format::Text => {
            writeln!(out, "{} n={}: {} vertices, {} edges", g.spec().kind(), g.n(), g.vertex_count(), g.edge_count())?;
            for &v in g.vertices() {
                let ns: Vec<String> = g.neighbors(v).map(|u| u.to_string()).collect();
                writeln!(out, "{v}: {}", ns.join(" "))?;
            }
        }
        Format::Json => {
            let adjacency: Vec<serde_json::Value> = g
                .vertices()
                .iter()
                .map(|&v| serde_json::json!({ "vertex": v, "neighbors": g.neighbors(v).collect::<Vec<_>>() }))
                .collect();
            let doc = serde_json::json!({
                "kind": g.spec().kind().to_string(),
                "n": g.n(),
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "adjacency": adjacency,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_ham(kind: &str, n: u64, path: bool, verify: bool, format: Format) -> Result<(), CliError> {
    let family: Family = kind.parse().map_err(CliError::usage)?;
    let cert = if path { ham_path(family, n) } else { ham_cycle(family, n) }.map_err(CliError::usage)?;
    let cert = if verify {
        verify_certificate(&build_graph(&cert.spec)?, cert)
    } else {
        cert
    };
    let mut out = open_output(None)?;
    match format {
        Format::Text => {
            writeln!(out, "{}", cert.to_text())?;
            match &cert.status {
                Status::Unverified => {}
                Status::Verified => writeln!(out, "verified")?,
                Status::Failed { reason, position } => writeln!(out, "failed: {reason} at position {position}")?,
            }
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&cert)?)?,
    }
    out.flush()?;
    match cert.status {
        Status::Failed { reason, position } => Err(CliError::Verification(format!(
            "{family} n={n}: {reason} at position {position}"
        ))),
        _ => Ok(()),
    }
}

fn cmd_verify_fixtures(file: Option<&Path>) -> Result<(), CliError> {
    let loaded;
    let set: &FixtureSet = match file {
        Some(path) => {
            loaded = FixtureSet::load(path)?;
            &loaded
        }
        None => builtin_fixtures(),
    };
    if set.is_empty() {
        eprintln!("warning: no fixtures found");
    }
    let report = verify_fixtures(set)?;
    let mut out = open_output(None)?;
    let mut failed = 0;
    for o in report.failures() {
        failed += 1;
        write!(out, "FAIL {} n={}:", o.family, o.n)?;
        if let Status::Failed { reason, position } = &o.status {
            write!(out, " certificate {reason} at position {position};")?;
        }
        match &o.constructor_diff {
            Some(diff) if !diff.is_empty() => {
                let shown: Vec<String> = diff
                    .iter()
                    .take(5)
                    .map(|d| format!("position {}: expected {}, found {}", d.position, show(d.expected), show(d.found)))
                    .collect();
                writeln!(out, " constructor differs at {} position(s): {}", diff.len(), shown.join(", "))?;
            }
            _ => writeln!(out)?,
        }
    }
    writeln!(out, "{} fixture(s) checked, {} passed, {failed} failed", report.outcomes.len(), report.outcomes.len() - failed)?;
    out.flush()?;
    if failed > 0 {
        return Err(CliError::Verification(format!("{failed} fixture(s) failed")));
    }
    Ok(())
}

fn show(v: Option<u64>) -> String {
    v.map_or_else(|| "nothing".into(), |v| v.to_string())
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let existing = args.manifest.as_deref().filter(|p| p.exists());
    let mut manifest = match existing {
        Some(path) => SweepManifest::load(path)?,
        None => {
            let to = args.to.ok_or_else(|| CliError::Usage("--to is required for a new sweep".into()))?;
            let out = args.out.clone().ok_or_else(|| CliError::Usage("--out is required for a new sweep".into()))?;
            let kinds = if args.kinds.is_empty() {
                vec![OddSetKind::NearGoldbach, OddSetKind::Goldbach]
            } else {
                args.kinds
                    .iter()
                    .map(|k| k.parse::<OddSetKind>())
                    .collect::<Result<_, _>>()
                    .map_err(CliError::usage)?
            };
            SweepManifest::new(args.from, to, args.step, kinds, out).map_err(CliError::usage)?
        }
    };
    let options = SweepOptions {
        chunk: args.chunk.max(1),
        ..SweepOptions::default()
    };
    let quiet = args.quiet;
    let records = run_sweep(&mut manifest, args.manifest.as_deref(), options, |r| {
        if !quiet {
            eprintln!("{r}");
        }
    })?;
    let worst = records.iter().map(|r| r.diameter).max();
    let disconnected = records.iter().filter(|r| !r.connected).count();
    println!(
        "{} record(s) appended to {}; largest diameter {}; {disconnected} disconnected",
        records.len(),
        manifest.output.display(),
        worst.map_or_else(|| "-".into(), |d| d.to_string())
    );
    Ok(())
}

fn cmd_export(args: &GraphArgs, format: ExportFormat, output: Option<&Path>) -> Result<(), CliError> {
    let g = args.build()?;
    let text = match format {
        ExportFormat::Dot => export::dot(&g),
        ExportFormat::EdgeCsv => export::edge_csv(&g),
        ExportFormat::Biadjacency => export::biadjacency_text(&g)?,
    };
    let mut out = open_output(output)?;
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Build { graph, format } => cmd_build(&graph, format),
        Command::Analyze(args) => analyze::run(&args),
        Command::Ham { kind, n, path, verify, format } => cmd_ham(&kind, n, path, verify, format),
        Command::VerifyFixtures { file } => cmd_verify_fixtures(file.as_deref()),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Export { graph, format, output } => cmd_export(&graph, format, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

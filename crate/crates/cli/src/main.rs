use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use agraph::criteria::{CriteriaError, SweepOptions};
use agraph::family::{FamilyKind, GraphFamily};
use agraph::fixtures::FixtureId;
use agraph::report::{AnalysisReport, GridSpec};
use agraph::spectral::DEFAULT_PSD_TOL;
use agraph::state::StateError;
use agraph::{format, Graph};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "agraph", version, about = "Graph density matrices and PPT classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every criterion at one alpha or across a sweep
    Analyze(AnalyzeArgs),
    /// Write a graph file for a standard family
    Generate(GenerateArgs),
    /// Run the built-in reference graphs and report PASS/FAIL per graph
    PaperExamples(ExamplesArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Graph file (`-` for standard input)
    file: PathBuf,
    /// Single mixing parameter in (0, 1]
    #[arg(long, conflicts_with = "sweep")]
    alpha: Option<f64>,
    /// start:end:count, inclusive of both ends
    #[arg(long, default_value = "0.01:1.0:100")]
    sweep: SweepSpec,
    /// Override the bipartition from the file header
    #[arg(long, requires = "d2")]
    d1: Option<usize>,
    #[arg(long, requires = "d1")]
    d2: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Eigenvalue tolerance for positivity checks
    #[arg(long, default_value_t = DEFAULT_PSD_TOL)]
    tol: f64,
    /// Bisect run boundaries to 1e-4
    #[arg(long)]
    refine: bool,
}

#[derive(Args)]
struct GenerateArgs {
    /// complete, path, cycle or random
    family: String,
    n: usize,
    d1: usize,
    d2: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge probability for the random family
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// Output path; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExamplesArgs {
    /// Run a single reference graph, e.g. P4 or PT-G2
    #[arg(long)]
    only: Option<String>,
    /// Print every check, not only failures
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug)]
struct SweepSpec(GridSpec);

impl FromStr for SweepSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, k] = parts.as_slice() else {
            return Err(format!("expected start:end:count, got `{s}`"));
        };
        let start: f64 = a.parse().map_err(|_| format!("bad start `{a}`"))?;
        let end: f64 = b.parse().map_err(|_| format!("bad end `{b}`"))?;
        let count: usize = k.parse().map_err(|_| format!("bad count `{k}`"))?;
        if count == 0 {
            return Err("count must be positive".into());
        }
        if !(start > 0.0 && start <= end && end <= 1.0) || (count > 1 && start == end) {
            return Err(format!("need 0 < start < end <= 1, got {start}:{end}"));
        }
        Ok(SweepSpec(GridSpec { start, end, count }))
    }
}

/// An error with the process exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

const EXIT_OTHER: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INVALID_STATE: u8 = 3;

impl From<CriteriaError> for Failure {
    fn from(e: CriteriaError) -> Self {
        let code = match e {
            CriteriaError::State(StateError::Edgeless | StateError::AlphaOutOfRange(_)) => EXIT_INVALID_STATE,
            CriteriaError::TrivialDimension(_) => EXIT_INVALID_STATE,
            _ => EXIT_OTHER,
        };
        Failure::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => analyze(&args),
        Command::Generate(args) => generate(&args),
        Command::PaperExamples(args) => paper_examples(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())
    } else {
        fs::read_to_string(path)
    }
    .map_err(|e| Failure::new(EXIT_OTHER, format!("cannot read {}: {e}", path.display())))?;
    format::parse_graph(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn analyze(args: &AnalyzeArgs) -> Result<(), Failure> {
    let mut graph = read_graph(&args.file)?;
    if let (Some(d1), Some(d2)) = (args.d1, args.d2) {
        graph = graph
            .with_bipartition(d1, d2)
            .map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    }
    let label = args
        .file
        .file_stem()
        .map_or_else(|| "graph".to_owned(), |s| s.to_string_lossy().into_owned());

    let report = match args.alpha {
        Some(alpha) => {
            let r = AnalysisReport::point(&graph, &label, alpha, args.tol)?;
            if !r.points()[0].valid {
                return Err(Failure::new(
                    EXIT_INVALID_STATE,
                    format!(
                        "alpha = {alpha} does not give a positive semidefinite state (valid for alpha >= {})",
                        agraph::num::fmt12(r.validity.alpha0_exact)
                    ),
                ));
            }
            r
        }
        None => AnalysisReport::sweep(
            &graph,
            &label,
            args.sweep.0,
            SweepOptions {
                tol: args.tol,
                refine: args.refine,
            },
        )?,
    };

    let out = match args.format {
        OutputFormat::Json => report.to_json() + "\n",
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Text => report.to_text(),
    };
    print!("{out}");
    Ok(())
}

fn generate(args: &GenerateArgs) -> Result<(), Failure> {
    let kind: FamilyKind = args.family.parse().map_err(|e: agraph::family::FamilyError| Failure::new(EXIT_OTHER, e.to_string()))?;
    let family = GraphFamily {
        seed: args.seed,
        density: args.density,
        ..GraphFamily::new(kind, args.n)
    };
    let graph = family
        .generate(args.d1, args.d2)
        .map_err(|e| Failure::new(EXIT_OTHER, e.to_string()))?;
    let mut text = format!("# {kind} n={} seed={}\n", args.n, args.seed);
    text.push_str(&format::to_text(&graph));
    match &args.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::new(EXIT_OTHER, format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn paper_examples(args: &ExamplesArgs) -> Result<(), Failure> {
    let ids: Vec<FixtureId> = match &args.only {
        Some(name) => vec![FixtureId::find(name).ok_or_else(|| {
            let known: Vec<_> = FixtureId::ALL.iter().map(|f| f.name()).collect();
            Failure::new(EXIT_OTHER, format!("unknown fixture `{name}` (known: {})", known.join(", ")))
        })?],
        None => FixtureId::ALL.to_vec(),
    };
    let mut failed = 0;
    for id in &ids {
        let report = id.run()?;
        let ok = report.passed();
        println!("{} {:<6} {}", if ok { "PASS" } else { "FAIL" }, id.name(), id.description());
        for c in &report.checks {
            if args.verbose || !c.passed() {
                println!(
                    "    {} {}: {} (want {} +/- {:e})",
                    if c.passed() { "ok  " } else { "FAIL" },
                    c.label,
                    agraph::num::fmt12(c.actual),
                    agraph::num::fmt12(c.expected),
                    c.tol
                );
            }
        }
        if !ok {
            failed += 1;
        }
    }
    println!("{} of {} passed", ids.len() - failed, ids.len());
    if failed > 0 {
        Err(Failure::new(EXIT_OTHER, ""))
    } else {
        Ok(())
    }
}

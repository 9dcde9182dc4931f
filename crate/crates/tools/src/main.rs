use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use e6core::catalog::THEOREM;
use e6core::models::ActionModel;
use e6core::weyl::{TorusSubgroup, VElement, WeylGroup};
use e6tools::cache::{self, CacheStatus};
use e6tools::checks::{self, Suite};
use e6tools::error::ToolError;
use e6tools::gradespec::{self, GradeSpec, MODELS};
use e6tools::report::{Status, VerificationReport};
use e6tools::session::Session;

#[derive(Parser)]
#[command(name = "e6", version, about = "Exact computations with gradings on the Lie algebra e6")]
struct Cli {
    /// Directory holding the Weyl group cache
    #[arg(long, global = true, env = "E6_CACHE_DIR")]
    cache: Option<PathBuf>,

    /// Upper bound on concurrently running checks
    #[arg(long, global = true, default_value_t = default_jobs())]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weyl group listing, classes, stabilizers and censuses
    Weyl {
        #[command(subcommand)]
        command: WeylCommand,
    },
    /// Build a model and check its structure
    Algebra {
        #[command(subcommand)]
        command: AlgebraCommand,
    },
    /// Diagonalize the quasitorus described by a spec file
    Grade {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: GradeFormat,
    },
    /// Run a verification suite
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Also write the JSON report to this file
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        /// Record per-check runtimes (reports are then no longer reproducible byte for byte)
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Subcommand)]
enum WeylCommand {
    /// Enumerate the group, writing the cache when a cache directory is set
    Build,
    /// Conjugacy classes with orders, sizes and torus stabilizers
    Orbits {
        /// Also list the classes of the outer coset
        #[arg(long)]
        extended: bool,
    },
    /// Torus stabilizer of an element given by index or name
    Stab {
        element: String,
        /// Print the explicit parametrization
        #[arg(long)]
        describe: bool,
    },
    /// Elements of the given orders commuting with a reference element
    Census {
        #[arg(long = "ref")]
        reference: String,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        orders: Vec<u32>,
    },
}

#[derive(Subcommand)]
enum AlgebraCommand {
    /// Build a model and run the exhaustive Jacobi check
    Build {
        model: String,
        /// Symplectic form of the c4 model, 1 to 7
        #[arg(long, default_value_t = 1)]
        form: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GradeFormat {
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
    Md,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.into()
        }
    }
}

fn load_group(cache_dir: Option<&Path>) -> Result<(WeylGroup, CacheStatus), ToolError> {
    cache::load_or_build(cache_dir)
}

fn run(cli: Cli) -> Result<(), ToolError> {
    let cache_dir = cli.cache.as_deref();
    match cli.command {
        Command::Weyl { command } => weyl(command, cache_dir),
        Command::Algebra { command: AlgebraCommand::Build { model, form } } => algebra(&model, form),
        Command::Grade { spec, format } => {
            let parsed = GradeSpec::read(&spec)?;
            let session = Session::new(load_group(cache_dir)?.0);
            let report = gradespec::grade(&parsed.resolve(&session, &spec)?)?;
            let text = match format {
                GradeFormat::Json => report.to_json(),
                GradeFormat::Csv => report.to_csv()?,
                GradeFormat::Md => report.to_markdown(),
            };
            print!("{text}");
            Ok(())
        }
        Command::Verify { suite, report, format, timings } => verify(suite, report.as_deref(), format, timings, cache_dir, cli.jobs),
    }
}

fn resolve(group: &WeylGroup, name: &str) -> Result<VElement, ToolError> {
    group.parse_name(name).map_err(|_| ToolError::unknown("Weyl element", name))
}

fn stabilizer(group: &WeylGroup, v: VElement) -> Result<TorusSubgroup, ToolError> {
    TorusSubgroup::fixed_by(&group.matrix(v), e6core::exactfield::DEFAULT_LEVEL).map_err(|e| ToolError::Computation(e.to_string()))
}

fn weyl(command: WeylCommand, cache_dir: Option<&Path>) -> Result<(), ToolError> {
    let (group, status) = load_group(cache_dir)?;
    match command {
        WeylCommand::Build => {
            let identity = group.locate(&e6core::weyl::RootMatrix::IDENTITY).map_err(|e| ToolError::Computation(e.to_string()))?;
            println!("{} elements, identity at index {}", group.len(), identity.index());
            match status {
                CacheStatus::Disabled => println!("cache: disabled"),
                CacheStatus::Loaded(p) => println!("cache: loaded {}", p.display()),
                CacheStatus::Written(p) => println!("cache: wrote {}", p.display()),
            }
        }
        WeylCommand::Orbits { extended } => {
            let mut out = String::from("representative  order  size  stabilizer\n");
            let mut cosets = vec![false];
            if extended {
                cosets.push(true);
            }
            for outer in cosets {
                for c in group.classes(outer) {
                    let shape = stabilizer(&group, c.representative)?.shape.as_torus_group();
                    let _ = writeln!(out, "{:<14}  {:>5}  {:>4}  {}", c.representative.to_string(), c.order, c.size, shape);
                }
            }
            print!("{out}");
        }
        WeylCommand::Stab { element, describe } => {
            let t = stabilizer(&group, resolve(&group, &element)?)?;
            println!("{}", t.shape.as_torus_group());
            if describe {
                println!("{}", t.describe());
            }
        }
        WeylCommand::Census { reference, orders } => {
            let x = resolve(&group, &reference)?;
            let classes = group.class_map();
            for order in orders {
                let census = group.commuting_census(x, order, &classes);
                println!("order {order}: {} elements commute with {x}", census.total());
                for (class, n) in &census.by_class {
                    println!("  class {class}: {n}");
                }
            }
        }
    }
    Ok(())
}

fn algebra(model: &str, form: usize) -> Result<(), ToolError> {
    let session = Session::new(WeylGroup::build());
    let ctx = session.context();
    let failed = |e: String| ToolError::Computation(e);
    let describe = |m: &ActionModel| {
        let summands: Vec<String> = m.summands().iter().map(|s| format!("{} ({})", s.name, s.dim)).collect();
        let kind = if m.has_full_bracket() { "full bracket" } else { "action only" };
        println!("model {}: dimension {}, {kind}", m.name(), m.dim());
        println!("summands: {}", summands.join(", "));
        m.check_structure().map_err(|e| ToolError::Computation(e.to_string()))?;
        println!("jacobi: holds");
        println!("killing rank: {}", m.structure().killing_rank());
        Ok::<(), ToolError>(())
    };
    match model {
        "chevalley" => {
            let chev = ctx.chevalley().map_err(failed)?;
            let alg = chev.algebra();
            println!("model chevalley: dimension {}, full bracket, {} roots", alg.dim(), chev.roots().len());
            alg.check_jacobi().map_err(|e| ToolError::Computation(e.to_string()))?;
            println!("jacobi: holds");
            println!("killing rank: {}", alg.killing_rank());
            Ok(())
        }
        "adams" => describe(ctx.adams().map_err(failed)?.model()),
        "a5a1" => describe(ctx.a5a1().map_err(failed)?.model()),
        "q14" => describe(ctx.z4().map_err(failed)?.model()),
        "c4" => describe(ctx.c4(form).map_err(|_| ToolError::unknown("symplectic form", form.to_string()))?.model()),
        "albert" => {
            let m = session.albert().map_err(failed)?;
            describe(m.model())?;
            println!("derivations of the Albert algebra: {}", m.derivation_dim());
            Ok(())
        }
        other => Err(ToolError::UnknownName { kind: "model", name: format!("{other} (known: {})", MODELS.join(", ")) }),
    }
}

fn verify(suite: Suite, report_path: Option<&Path>, format: ReportFormat, timings: bool, cache_dir: Option<&Path>, jobs: usize) -> Result<(), ToolError> {
    let session = Session::new(load_group(cache_dir)?.0);
    let selected = checks::select(suite);
    let records = checks::run(&selected, &session, jobs.max(1), timings)?;
    let report = VerificationReport::new(suite.name(), records);
    match format {
        ReportFormat::Text => {
            print!("{}", report.to_text());
            if suite.contains(7) {
                print!("{}", theorem_summary(&report));
            }
        }
        ReportFormat::Json => print!("{}", report.to_json()),
        ReportFormat::Md => print!("{}", report.to_markdown()),
    }
    if let Some(path) = report_path {
        std::fs::write(path, report.to_json()).map_err(|e| ToolError::io(path, e))?;
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(ToolError::ChecksFailed { failed: report.summary.failed, total: report.summary.total })
    }
}

/// One line per fine grading: expected invariants and how many routes reproduce them.
fn theorem_summary(report: &VerificationReport) -> String {
    let mut out = String::from("\ngrading  quasitorus           type                   routes\n");
    for row in THEOREM {
        let prefix = format!("theorem.{}.", row.name);
        let mine: Vec<_> = report.checks.iter().filter(|c| c.id.starts_with(&prefix) && c.id.ends_with(".type") && c.status != Status::Fail).collect();
        let failed = report.checks.iter().any(|c| c.id.starts_with(&prefix) && c.status == Status::Fail);
        let verdict = if failed { "FAIL".to_string() } else { format!("{} agree", mine.len()) };
        let _ = writeln!(out, "{:<8} {:<20} {:<22} {verdict}", row.name, row.group, row.expected_type().to_string());
    }
    out
}

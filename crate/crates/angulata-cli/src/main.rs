//! Command line front end for the angulata library.
//!
//! Every command prints deterministically: identical invocations give
//! byte-identical output. Exit codes: 0 success, 1 usage error, 2 domain
//! error (bad input, unsatisfiable request, exhausted budget), 3 internal
//! invariant violation.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use angulata::arc::{Arc, Lamination};
use angulata::fixture::MutationFixture;
use angulata::graph::{exchange_graph, exchange_graph_component, ExchangeGraph};
use angulata::index::{apply_index_substitution, compute_index, IndexVector};
use angulata::shear::{shear_lamination, shear_vector};
use angulata::tilting::{enumerate_tiltings, mutate, ClusterTilting};
use angulata::tuple::{enumerate_objects, IndexTuple};
use angulata::{Budget, Error, ModelParams};

/// Prints a line to stdout; a closed pipe downstream (e.g. `| head`) ends
/// the run quietly instead of panicking.
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(
    name = "angulata",
    version,
    about = "Cyclic tilting combinatorics: enumeration, exchange, index vectors, \
             tropical substitution, shear coordinates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List or count the admissible tuples of a model
    Objects(ObjectsArgs),
    /// Enumerate the tilting collections of a model
    Tiltings(TiltingsArgs),
    /// Exchange one summand of a tilting collection
    Mutate(MutateArgs),
    /// Index vector of an object over a tilting collection
    Index(IndexArgs),
    /// Shear coordinates of an arc, or of several forming a lamination
    Shear(ShearArgs),
    /// Exchange graph: tilting collections joined by single exchanges
    Graph(GraphArgs),
    /// Apply the tropical index substitution to a coefficient vector
    Trop(TropArgs),
    /// Replay the bundled before/after index-vector table
    VerifyFixture(VerifyFixtureArgs),
}

#[derive(Args)]
struct ObjectsArgs {
    /// Dimension parameter d
    #[arg(long)]
    d: u32,
    /// Size parameter n
    #[arg(long)]
    n: u32,
    /// Print only the number of results
    #[arg(long)]
    count: bool,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TiltingsArgs {
    /// Dimension parameter d
    #[arg(long)]
    d: u32,
    /// Size parameter n
    #[arg(long)]
    n: u32,
    /// Print only the number of results
    #[arg(long)]
    count: bool,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
    /// Enumeration node budget
    #[arg(long, value_name = "N", default_value_t = Budget::default().max_nodes)]
    max_nodes: u64,
    /// Enumeration wall-clock budget in seconds
    #[arg(long, value_name = "S", default_value_t = Budget::default().max_seconds)]
    max_seconds: u64,
}

#[derive(Args)]
struct MutateArgs {
    /// Tilting collection file {"d":..,"n":..,"summands":[[..],..]}
    #[arg(long, value_name = "FILE")]
    tilting: PathBuf,
    /// Slot to exchange, counted from 1 in file order
    #[arg(long, value_name = "POS")]
    at: usize,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct IndexArgs {
    /// Tilting collection file {"d":..,"n":..,"summands":[[..],..]}
    #[arg(long, value_name = "FILE")]
    tilting: PathBuf,
    /// Object as comma-separated vertices, e.g. "0,2,4,6"
    #[arg(long, value_name = "TUPLE")]
    object: String,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ShearArgs {
    /// Tilting collection file {"d":..,"n":..,"summands":[[..],..]}
    #[arg(long, value_name = "FILE")]
    tilting: PathBuf,
    /// Arc as comma-separated rationals, e.g. "1/2,5/2,9/2,13/2";
    /// repeat the flag to sum a lamination's coordinates
    #[arg(long, value_name = "ARC", required = true)]
    arc: Vec<String>,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GraphArgs {
    /// Dimension parameter d (with --n: the whole model's graph)
    #[arg(long, requires = "n", conflicts_with = "tilting")]
    d: Option<u32>,
    /// Size parameter n
    #[arg(long, requires = "d", conflicts_with = "tilting")]
    n: Option<u32>,
    /// Seed collection file; explores only its connected component
    #[arg(long, value_name = "FILE")]
    tilting: Option<PathBuf>,
    /// Write the graph in DOT format to FILE
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
    /// Search node budget
    #[arg(long, value_name = "N", default_value_t = Budget::default().max_nodes)]
    max_nodes: u64,
    /// Search wall-clock budget in seconds
    #[arg(long, value_name = "S", default_value_t = Budget::default().max_seconds)]
    max_seconds: u64,
}

#[derive(Args)]
struct TropArgs {
    /// Tilting collection file {"d":..,"n":..,"summands":[[..],..]}
    #[arg(long, value_name = "FILE")]
    tilting: PathBuf,
    /// Slot to substitute at, counted from 1 in file order
    #[arg(long, value_name = "POS")]
    at: usize,
    /// Coefficients over the collection's slots, comma-separated integers
    #[arg(long, value_name = "VEC")]
    object: String,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyFixtureArgs {
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

enum CliError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult = Result<(), CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(1)
                }
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Objects(args) => cmd_objects(args),
        Command::Tiltings(args) => cmd_tiltings(args),
        Command::Mutate(args) => cmd_mutate(args),
        Command::Index(args) => cmd_index(args),
        Command::Shear(args) => cmd_shear(args),
        Command::Graph(args) => cmd_graph(args),
        Command::Trop(args) => cmd_trop(args),
        Command::VerifyFixture(args) => cmd_verify_fixture(args),
    }
}

fn cmd_objects(args: ObjectsArgs) -> CliResult {
    let p = ModelParams::new(args.d, args.n)?;
    if args.count {
        let count = p.object_count();
        if args.json {
            outln!("{}", json!({ "count": count }));
        } else {
            outln!("{count}");
        }
        return Ok(());
    }
    let objects = enumerate_objects(&p);
    if args.json {
        let labels: Vec<String> = objects.iter().map(|t| t.to_string()).collect();
        outln!("{}", json!({ "objects": labels }));
    } else {
        for t in &objects {
            outln!("{t}");
        }
    }
    Ok(())
}

fn cmd_tiltings(args: TiltingsArgs) -> CliResult {
    let p = ModelParams::new(args.d, args.n)?;
    let budget = Budget {
        max_nodes: args.max_nodes,
        max_seconds: args.max_seconds,
    };
    let enumeration = enumerate_tiltings(&p, &budget)?;
    if enumeration.truncated {
        return Err(Error::BudgetExceeded(
            "enumeration was cut short; raise --max-nodes or --max-seconds".into(),
        )
        .into());
    }
    if args.count {
        if args.json {
            outln!("{}", json!({ "count": enumeration.tiltings.len() }));
        } else {
            outln!("{}", enumeration.tiltings.len());
        }
        return Ok(());
    }
    if args.json {
        let labels: Vec<String> = enumeration.tiltings.iter().map(|t| t.label()).collect();
        outln!("{}", json!({ "tiltings": labels }));
    } else {
        for t in &enumeration.tiltings {
            outln!("{}", t.label());
        }
    }
    Ok(())
}

fn cmd_mutate(args: MutateArgs) -> CliResult {
    let t = read_tilting(&args.tilting)?;
    let pos = slot_from_one_based(args.at, t.summands().len())?;
    let (mutated, frame) = mutate(&t, pos)?;
    if args.json {
        let tilting: serde_json::Value = serde_json::from_str(&mutated.to_json_string())
            .expect("serialized tilting parses");
        outln!(
            "{}",
            json!({
                "replacement": frame.incoming().to_string(),
                "frame": frame.b(),
                "outgoing": frame.outgoing().to_string(),
                "outgoing_parity": frame.r_parity().to_string(),
                "tilting": tilting,
            })
        );
    } else {
        outln!("replacement: {}", frame.incoming());
        outln!("frame: {}", join(frame.b().iter()));
        outln!("outgoing-parity: {}", frame.r_parity());
        outln!("tilting: {}", mutated.label());
    }
    Ok(())
}

fn cmd_index(args: IndexArgs) -> CliResult {
    let t = read_tilting(&args.tilting)?;
    let p = t.params();
    let object = IndexTuple::parse(&args.object, &p)?;
    let v = compute_index(&t, &object)?;
    print_vector(&v, args.json);
    Ok(())
}

fn cmd_shear(args: ShearArgs) -> CliResult {
    let t = read_tilting(&args.tilting)?;
    let p = t.params();
    let arcs = args
        .arc
        .iter()
        .map(|s| Arc::parse(s, &p))
        .collect::<Result<Vec<_>, _>>()?;
    let v = match arcs.len() {
        1 => shear_vector(&t, &arcs[0])?,
        _ => shear_lamination(&t, &Lamination::new(arcs, &p)?)?,
    };
    print_vector(&v, args.json);
    Ok(())
}

fn cmd_graph(args: GraphArgs) -> CliResult {
    let budget = Budget {
        max_nodes: args.max_nodes,
        max_seconds: args.max_seconds,
    };
    let g = match (&args.tilting, args.d, args.n) {
        (Some(path), None, None) => {
            let seed = read_tilting(path)?;
            exchange_graph_component(&seed, &budget)?
        }
        (None, Some(d), Some(n)) => {
            let p = ModelParams::new(d, n)?;
            exchange_graph(&p, &budget)?
        }
        _ => {
            return Err(CliError::Usage(
                "pass --d and --n for a whole model, or --tilting FILE for one component".into(),
            ))
        }
    };
    if g.truncated {
        return Err(Error::BudgetExceeded(
            "graph search was cut short; raise --max-nodes or --max-seconds".into(),
        )
        .into());
    }
    if let Some(path) = &args.dot {
        write_file(path, &g.to_dot())?;
    }
    if args.json {
        outln!("{}", graph_json(&g));
    } else {
        outln!("nodes: {}", g.nodes.len());
        outln!("edges: {}", g.edges.len());
    }
    Ok(())
}

fn graph_json(g: &ExchangeGraph) -> serde_json::Value {
    let nodes: Vec<String> = g.nodes.iter().map(|t| t.label()).collect();
    let edges: Vec<serde_json::Value> = g
        .edges
        .iter()
        .map(|e| {
            json!({
                "from": e.from,
                "to": e.to,
                "outgoing": e.outgoing.to_string(),
                "incoming": e.incoming.to_string(),
            })
        })
        .collect();
    json!({ "nodes": nodes, "edges": edges })
}

fn cmd_trop(args: TropArgs) -> CliResult {
    let t = read_tilting(&args.tilting)?;
    let pos = slot_from_one_based(args.at, t.summands().len())?;
    let coeffs = parse_coeffs(&args.object)?;
    let v = IndexVector::new(t, coeffs)?;
    let out = apply_index_substitution(&v, pos)?;
    print_vector(&out, args.json);
    Ok(())
}

fn cmd_verify_fixture(args: VerifyFixtureArgs) -> CliResult {
    let fixture = MutationFixture::load()?;
    let report = fixture.verify()?;
    if args.json {
        let mismatches: Vec<serde_json::Value> = report
            .mismatches
            .iter()
            .map(|m| json!({ "row": m.row, "expected": m.expected, "got": m.got }))
            .collect();
        outln!(
            "{}",
            json!({
                "total": report.total,
                "matches": report.matches,
                "mismatches": mismatches,
            })
        );
    } else {
        outln!("{}/{} vectors match", report.matches, report.total);
        for m in &report.mismatches {
            outln!(
                "row {}: expected {}, got {}",
                m.row,
                join(m.expected.iter()),
                join(m.got.iter())
            );
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Error::Validation(format!(
            "{} of {} fixture rows disagree with the substitution rule",
            report.mismatches.len(),
            report.total
        ))
        .into())
    }
}

fn read_tilting(path: &Path) -> Result<ClusterTilting, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
    Ok(ClusterTilting::from_json_str(&text)?)
}

fn write_file(path: &Path, content: &str) -> CliResult {
    std::fs::write(path, content)
        .map_err(|e| Error::Validation(format!("cannot write {}: {e}", path.display())).into())
}

/// Slots are presented 1-based on the command line, 0-based in the library.
fn slot_from_one_based(at: usize, slots: usize) -> Result<usize, CliError> {
    if at == 0 || at > slots {
        return Err(Error::Validation(format!(
            "--at {at} is out of range: slots are numbered 1..={slots}"
        ))
        .into());
    }
    Ok(at - 1)
}

fn parse_coeffs(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|part| {
            part.trim().parse::<i64>().map_err(|_| {
                Error::Validation(format!("bad coefficient {part:?}: expected an integer")).into()
            })
        })
        .collect()
}

fn print_vector(v: &IndexVector, json: bool) {
    if json {
        outln!("{}", v.to_json_string());
    } else {
        outln!("basis: {}", v.basis().label());
        outln!("coeffs: {}", join(v.coeffs().iter()));
    }
}

fn join<T: std::fmt::Display>(items: impl Iterator<Item = T>) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphc_core::graph::to_graph;
use graphc_core::icm::to_inverse_icm;
use graphc_core::oracle::{self, OracleError, VerifyOptions};
use graphc_core::{
    compile_detailed, Circuit, CompileOptions, CompiledPattern, Error, InitState, Objective,
};

#[derive(Parser)]
#[command(
    name = "graphc",
    version,
    about = "Compile Clifford+T circuits into graph-state measurement patterns"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a circuit into a pattern (JSON).
    Compile(CompileArgs),
    /// Check a pattern against the circuit it was compiled from.
    Verify(VerifyArgs),
    /// Convert a Clifford circuit's output state into a graph and print it.
    Graph(GraphArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum OptimizeArg {
    None,
    Edges,
    Degree,
}

#[derive(Args)]
struct InputArgs {
    /// Circuit file.
    input: PathBuf,
    /// Per-wire initial states overriding the file, e.g. `+0`.
    #[arg(long, value_name = "STR")]
    input_state: Option<String>,
}

#[derive(Args)]
struct CompileArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Output file for the JSON pattern; `-` for stdout.
    #[arg(short, long, default_value = "-")]
    out: String,
    /// Also write a DOT rendering.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
    /// Also write the Clifford prefix in circuit format.
    #[arg(long, value_name = "PATH")]
    emit_prefix: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "none")]
    optimize: OptimizeArg,
    /// Maximum number of LC moves.
    #[arg(long, default_value_t = 100)]
    budget: usize,
    /// Search the whole LC orbit (at most 10 nodes).
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Reject patterns with more nodes than this.
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Pattern JSON produced by `compile`.
    pattern: PathBuf,
    /// Simulator qubit limit.
    #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
    cap: usize,
    #[arg(long, default_value_t = oracle::DEFAULT_TOL)]
    tol: f64,
    /// Seed for branch sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Branches to sample when there are too many to enumerate.
    #[arg(long, default_value_t = 256)]
    samples: usize,
    /// Enumerate every branch.
    #[arg(long)]
    exhaustive: bool,
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 1,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::new(2, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))
}

fn load_circuit(args: &InputArgs) -> Result<Circuit, Failure> {
    let text = read(&args.input)?;
    let mut c = Circuit::parse(&text)
        .map_err(|e| Failure::new(1, format!("{}: {e}", args.input.display())))?;
    if let Some(s) = &args.input_state {
        let labels = parse_labels(s)?;
        c.set_initial_states(labels)
            .map_err(|e| Failure::new(2, e.to_string()))?;
    }
    Ok(c)
}

fn parse_labels(s: &str) -> Result<Vec<InitState>, Failure> {
    InitState::parse_labels(s)
        .ok_or_else(|| Failure::new(2, format!("invalid input state `{s}` (use 0 and +)")))
}

fn emit(out: &str, text: &str) -> Result<(), Failure> {
    if out == "-" {
        io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::new(1, e.to_string()))
    } else {
        write(Path::new(out), text)
    }
}

fn cmd_compile(args: CompileArgs) -> Result<(), Failure> {
    let c = load_circuit(&args.input)?;
    let opts = CompileOptions {
        seed: args.seed,
        input_state: None,
        optimize: match args.optimize {
            OptimizeArg::None => None,
            OptimizeArg::Edges => Some(Objective::EdgeCount),
            OptimizeArg::Degree => Some(Objective::MaxDegree),
        },
        budget: args.budget,
        exhaustive: args.exhaustive,
    };
    if let Some(cap) = args.cap {
        let n = c.num_wires() + c.count_t_gates();
        if n > cap {
            return Err(OracleError::CapExceeded { n, cap }.into());
        }
    }
    if let Some(path) = &args.emit_prefix {
        write(path, &to_inverse_icm(&c).to_text())?;
    }
    let out = compile_detailed(&c, &opts)?;
    if !out.moves.is_empty() {
        let moves: Vec<String> = out.moves.iter().map(|m| m.vertex.to_string()).collect();
        eprintln!(
            "applied {} LC moves at vertices {}",
            moves.len(),
            moves.join(" ")
        );
    }
    if let Some(path) = &args.dot {
        write(path, &out.pattern.to_dot())?;
    }
    emit(&args.out, &out.pattern.to_json())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let c = load_circuit(&args.input)?;
    let text = read(&args.pattern)?;
    let p = CompiledPattern::from_json(&text)
        .map_err(|e| Failure::new(2, format!("{}: {e}", args.pattern.display())))?;
    let opts = VerifyOptions {
        cap: args.cap,
        tol: args.tol,
        seed: args.seed,
        samples: args.samples,
        force_exhaustive: args.exhaustive,
    };
    let report = oracle::verify(&c, &p, &opts)?;
    let kind = if report.exhaustive { "all" } else { "sampled" };
    match report.mismatch {
        None => {
            println!("ok: {} branches ({kind}) match", report.branches);
            Ok(())
        }
        Some(m) => {
            let assignment: Vec<String> = m
                .outcomes
                .iter()
                .map(|(s, &b)| format!("{s}={}", u8::from(b)))
                .collect();
            Err(Failure::new(
                3,
                format!(
                    "mismatch for outcomes {} (overlap {:.6})",
                    if assignment.is_empty() {
                        "(none)".into()
                    } else {
                        assignment.join(" ")
                    },
                    m.overlap
                ),
            ))
        }
    }
}

fn cmd_graph(args: GraphArgs) -> Result<(), Failure> {
    let c = load_circuit(&args.input)?;
    if !c.is_clifford() {
        return Err(Failure::new(
            2,
            "graph needs a Clifford-only circuit; use compile for T gates",
        ));
    }
    let t = to_inverse_icm(&c).prefix_final_tableau(0);
    let ext = to_graph(&t).map_err(|e| Failure::new(2, e.to_string()))?;
    let edges: Vec<String> = ext
        .graph
        .edges()
        .iter()
        .map(|(a, b)| format!("{a}-{b}"))
        .collect();
    let corrections: Vec<String> = ext.corrections.iter().map(|c| c.to_string()).collect();
    let or_none = |v: Vec<String>, sep: &str| {
        if v.is_empty() {
            "none".to_string()
        } else {
            v.join(sep)
        }
    };
    println!(
        "edges: {}; corrections: {}",
        or_none(edges, ", "),
        or_none(corrections, " ")
    );
    if let Some(path) = &args.dot {
        write(path, &ext.graph.to_dot())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compile(a) => cmd_compile(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Graph(a) => cmd_graph(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("graphc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

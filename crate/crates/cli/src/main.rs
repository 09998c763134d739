//! `scss` — solve, check, and generate two-terminal connection instances.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 bad usage or unparseable input,
//! 3 infeasible instance, 4 a search limit or the time budget ran out,
//! 5 verification or structure check failed.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use scss_core::hardness::{
    clique_to_gridtiling, certify, gridtiling_to_scss, GridTilingInstance,
};
use scss_core::io::{
    export_dot, parse_instance, parse_solution, parse_vertex_weighted, serialize_instance,
    serialize_solution, serialize_vertex_weighted, solution_to_json,
};
use scss_core::oracle::OracleError;
use scss_core::randgen::{random_instance, RandomSpec};
use scss_core::structure::{
    build_counterexample, is_general_reverse_compatible, is_path_reverse_compatible, rank,
    shared_subpaths,
};
use scss_core::{
    graph, oracle_enumerate_optima, oracle_opt, solve_with, verify, Instance, OracleLimits,
    SolveError, Weight,
};

const EXIT_PARSE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_LIMIT: u8 = 4;
const EXIT_FAILED_CHECK: u8 = 5;

/// Name of the environment variable bounding wall-clock time of `solve`
/// and `oracle`, in whole seconds.
const TIME_BUDGET_VAR: &str = "SCSS_TIME_BUDGET_SECS";

#[derive(Parser)]
#[command(name = "scss", version, about = "Two-terminal connection toolkit", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance exactly (demands (k, 1) only)
    Solve {
        /// Instance file, or - for standard input
        file: String,
        /// Print the solution as JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Brute-force reference optimum for small instances
    Oracle {
        /// Instance file, or - for standard input
        file: String,
        /// Print every optimal solution instead of just the value
        #[arg(long)]
        enumerate: bool,
        /// Abort after this many backward routes
        #[arg(long, default_value_t = 100_000)]
        max_paths: usize,
    },
    /// Check a solution file against an instance
    Verify {
        /// Instance file
        file: String,
        /// Solution file (text or JSON)
        solution: String,
    },
    /// Report shared stretches and reversal compatibility of a solution
    CheckStructure {
        /// Instance file
        file: String,
        /// Solution file (text or JSON)
        solution: String,
    },
    /// Generate instances
    #[command(subcommand)]
    Gen(GenCommand),
    /// Convert between vertex-weighted and edge-weighted formats
    Transform {
        /// Direction of the conversion
        direction: TransformDirection,
        /// Input file, or - for standard input
        file: String,
        /// Write here instead of standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Render an instance (plus optional solution) as Graphviz DOT
    ExportDot {
        /// Instance file
        file: String,
        /// Solution file to color walks from
        solution: Option<String>,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Seeded random instance
    Random(RandomArgs),
    /// Hard instance from a grid-tiling (clique) encoding
    Gridtiling(GridtilingArgs),
    /// The fixed 22-vertex instance whose optima defeat reversal structure
    Counterexample {
        /// Write here instead of standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RandomArgs {
    /// Number of vertices (s = 0, t = 1)
    #[arg(long)]
    n: u32,
    /// Number of edges
    #[arg(long)]
    m: u32,
    /// Maximum edge weight
    #[arg(long, default_value_t = 10)]
    wmax: Weight,
    /// Forward demand
    #[arg(long, default_value_t = 2)]
    k1: u32,
    /// Backward demand
    #[arg(long, default_value_t = 1)]
    k2: u32,
    /// RNG seed; the same seed always yields the same instance
    #[arg(long)]
    seed: u64,
    /// Plant a random Hamiltonian cycle so the instance is feasible
    #[arg(long)]
    strongly_connected: bool,
    /// Write here instead of standard output
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GridtilingArgs {
    /// Clique size to encode
    #[arg(long)]
    k: u32,
    /// Number of graph vertices (ignored with --from-clique)
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Encode this graph (format: `graph N M` then `e U V` lines)
    /// instead of the complete graph on --n vertices
    #[arg(long, value_name = "FILE")]
    from_clique: Option<PathBuf>,
    /// Write the instance here instead of standard output
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Where to write the reduction certificate (default: OUTPUT.cert.json)
    #[arg(long, value_name = "FILE")]
    certificate: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformDirection {
    /// Vertex-weighted file to edge-weighted file
    Vw2ew,
    /// Edge-weighted file to vertex-weighted file
    Ew2vw,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Solve { file, json } => cmd_solve(&file, json),
        Command::Oracle { file, enumerate, max_paths } => cmd_oracle(&file, enumerate, max_paths),
        Command::Verify { file, solution } => cmd_verify(&file, &solution),
        Command::CheckStructure { file, solution } => cmd_check_structure(&file, &solution),
        Command::Gen(gen) => cmd_gen(gen),
        Command::Transform { direction, file, output } => cmd_transform(direction, &file, output),
        Command::ExportDot { file, solution } => cmd_export_dot(&file, solution.as_deref()),
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("reading standard input")?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parses with a diagnostic naming the offending file; `Err` means exit 2.
fn load_instance(path: &str) -> Result<Result<Instance, u8>> {
    let text = read_input(path)?;
    match parse_instance(&text) {
        Ok(instance) => Ok(Ok(instance)),
        Err(err) => {
            eprintln!("{path}: {err}");
            Ok(Err(EXIT_PARSE))
        }
    }
}

fn time_budget() -> Result<Option<Instant>> {
    match std::env::var(TIME_BUDGET_VAR) {
        Ok(raw) => {
            let secs: u64 = raw
                .parse()
                .with_context(|| format!("{TIME_BUDGET_VAR} must be whole seconds, got {raw:?}"))?;
            Ok(Some(Instant::now() + Duration::from_secs(secs)))
        }
        Err(_) => Ok(None),
    }
}

fn cmd_solve(file: &str, json: bool) -> Result<u8> {
    let instance = match load_instance(file)? {
        Ok(instance) => instance,
        Err(code) => return Ok(code),
    };
    match solve_with(&instance, time_budget()?) {
        Ok(Some(solution)) => {
            if json {
                let payload = solution_to_json(&solution, &instance.graph);
                println!("{}", serde_json::to_string_pretty(&payload)?);
            } else {
                print!("{}", serialize_solution(&solution, &instance.graph));
            }
            Ok(0)
        }
        Ok(None) => {
            eprintln!("{file}: no solution; the demands cannot be routed");
            Ok(EXIT_INFEASIBLE)
        }
        Err(SolveError::DemandShape { k2 }) => {
            eprintln!("{file}: exact solving needs one backward demand, got k2 = {k2}");
            Ok(EXIT_PARSE)
        }
        Err(SolveError::Timeout(timeout)) => {
            eprintln!("{file}: time budget exhausted after {} expansions", timeout.expanded);
            Ok(EXIT_LIMIT)
        }
    }
}

fn cmd_oracle(file: &str, enumerate: bool, max_paths: usize) -> Result<u8> {
    let instance = match load_instance(file)? {
        Ok(instance) => instance,
        Err(code) => return Ok(code),
    };
    let limits = OracleLimits { max_paths, deadline: time_budget()? };
    let outcome = if enumerate {
        oracle_enumerate_optima(&instance, &limits).map(|optima| {
            if optima.is_empty() {
                None
            } else {
                let mut text = format!("optima {}\n", optima.len());
                for solution in &optima {
                    text.push_str(&serialize_solution(solution, &instance.graph));
                }
                Some(text)
            }
        })
    } else {
        oracle_opt(&instance, &limits).map(|opt| opt.map(|value| format!("opt {value}\n")))
    };
    match outcome {
        Ok(Some(text)) => {
            print!("{text}");
            Ok(0)
        }
        Ok(None) => {
            eprintln!("{file}: no solution; the demands cannot be routed");
            Ok(EXIT_INFEASIBLE)
        }
        Err(OracleError::LimitExceeded { max_paths }) => {
            eprintln!("{file}: more than {max_paths} backward routes; raise --max-paths");
            Ok(EXIT_LIMIT)
        }
        Err(OracleError::Timeout) => {
            eprintln!("{file}: time budget exhausted");
            Ok(EXIT_LIMIT)
        }
    }
}

fn load_solution(path: &str, instance: &Instance) -> Result<Result<graph::Solution, u8>> {
    let text = read_input(path)?;
    match parse_solution(&text, instance) {
        Ok(solution) => Ok(Ok(solution)),
        Err(err) => {
            eprintln!("{path}: {err}");
            Ok(Err(EXIT_PARSE))
        }
    }
}

fn cmd_verify(file: &str, solution_file: &str) -> Result<u8> {
    let instance = match load_instance(file)? {
        Ok(instance) => instance,
        Err(code) => return Ok(code),
    };
    let solution = match load_solution(solution_file, &instance)? {
        Ok(solution) => solution,
        Err(code) => return Ok(code),
    };
    let verdict = verify(&instance, &solution);
    if verdict.ok {
        println!("ok {}", solution.cost);
        Ok(0)
    } else {
        for issue in &verdict.issues {
            eprintln!("{solution_file}: {issue}");
        }
        Ok(EXIT_FAILED_CHECK)
    }
}

fn cmd_check_structure(file: &str, solution_file: &str) -> Result<u8> {
    let instance = match load_instance(file)? {
        Ok(instance) => instance,
        Err(code) => return Ok(code),
    };
    let solution = match load_solution(solution_file, &instance)? {
        Ok(solution) => solution,
        Err(code) => return Ok(code),
    };
    for (bi, b) in solution.backward.iter().enumerate() {
        for (fi, f) in solution.forward.iter().enumerate() {
            let stretches = shared_subpaths(f, b);
            let verdict =
                if is_path_reverse_compatible(f, b) { "compatible" } else { "INCOMPATIBLE" };
            println!("forward[{fi}] ~ backward[{bi}]: {} shared, {verdict}", stretches.len());
        }
        println!("backward[{bi}] rank {}", rank(&solution.forward, b));
    }
    if is_general_reverse_compatible(&solution.forward, &solution.backward) {
        println!("structure: compatible");
        Ok(0)
    } else {
        println!("structure: INCOMPATIBLE");
        Ok(EXIT_FAILED_CHECK)
    }
}

fn cmd_gen(gen: GenCommand) -> Result<u8> {
    match gen {
        GenCommand::Random(args) => {
            let spec = RandomSpec {
                n: args.n,
                m: args.m,
                wmax: args.wmax,
                k1: args.k1,
                k2: args.k2,
                seed: args.seed,
                strongly_connected: args.strongly_connected,
            };
            match random_instance(&spec) {
                Ok(instance) => {
                    emit(args.output.as_deref(), &serialize_instance(&instance))?;
                    Ok(0)
                }
                Err(err) => {
                    eprintln!("gen random: {err}");
                    Ok(EXIT_PARSE)
                }
            }
        }
        GenCommand::Gridtiling(args) => cmd_gen_gridtiling(args),
        GenCommand::Counterexample { output } => {
            emit(output.as_deref(), &serialize_instance(&build_counterexample()))?;
            Ok(0)
        }
    }
}

fn cmd_gen_gridtiling(args: GridtilingArgs) -> Result<u8> {
    let tiling = match &args.from_clique {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let (n, edges) = match parse_clique_graph(&text) {
                Ok(parsed) => parsed,
                Err(msg) => {
                    eprintln!("{}: {msg}", path.display());
                    return Ok(EXIT_PARSE);
                }
            };
            clique_to_gridtiling(n, &edges, args.k)
        }
        None => {
            let mut edges = Vec::new();
            for u in 0..args.n {
                for v in (u + 1)..args.n {
                    edges.push((u, v));
                }
            }
            clique_to_gridtiling(args.n, &edges, args.k)
        }
    };
    let tiling: GridTilingInstance = match tiling {
        Ok(tiling) => tiling,
        Err(err) => {
            eprintln!("gen gridtiling: {err}");
            return Ok(EXIT_PARSE);
        }
    };
    let layout = match gridtiling_to_scss(&tiling) {
        Ok(layout) => layout,
        Err(err) => {
            eprintln!("gen gridtiling: {err}");
            return Ok(EXIT_PARSE);
        }
    };
    emit(args.output.as_deref(), &serialize_instance(&layout.instance))?;

    let certificate_path = args
        .certificate
        .or_else(|| args.output.as_ref().map(|out| sidecar_path(out)));
    if let Some(path) = certificate_path {
        let budget = (tiling.n as u64).saturating_pow(tiling.k).min(10_000_000);
        let certificate = certify(&tiling, budget)
            .with_context(|| "cross-checking the generated instance".to_string())?;
        fs::write(&path, serde_json::to_string_pretty(&certificate)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(0)
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".cert.json");
    out.with_file_name(name)
}

/// Parses `graph N M` followed by `M` lines `e U V` (0-based endpoints).
fn parse_clique_graph(text: &str) -> Result<(u32, Vec<(u32, u32)>), String> {
    let mut n = None;
    let mut declared = 0usize;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = |what: &str| format!("line {}: {what}", idx + 1);
        match (fields[0], n) {
            ("graph", None) => {
                if fields.len() != 3 {
                    return Err(bad("expected `graph N M`"));
                }
                n = Some(fields[1].parse::<u32>().map_err(|_| bad("bad vertex count"))?);
                declared = fields[2].parse().map_err(|_| bad("bad edge count"))?;
            }
            ("graph", Some(_)) => return Err(bad("duplicate graph header")),
            ("e", Some(_)) => {
                if fields.len() != 3 {
                    return Err(bad("expected `e U V`"));
                }
                let u = fields[1].parse().map_err(|_| bad("bad endpoint"))?;
                let v = fields[2].parse().map_err(|_| bad("bad endpoint"))?;
                edges.push((u, v));
            }
            ("e", None) => return Err(bad("edge before graph header")),
            _ => return Err(bad("unknown directive")),
        }
    }
    let n = n.ok_or("missing `graph N M` header".to_string())?;
    if edges.len() != declared {
        return Err(format!("header declares {declared} edges, found {}", edges.len()));
    }
    Ok((n, edges))
}

fn cmd_transform(direction: TransformDirection, file: &str, output: Option<PathBuf>) -> Result<u8> {
    let text = read_input(file)?;
    let rendered = match direction {
        TransformDirection::Vw2ew => match parse_vertex_weighted(&text) {
            Ok(vw) => {
                let (instance, _) = graph::vertex_to_edge_weighted(&vw);
                serialize_instance(&instance)
            }
            Err(err) => {
                eprintln!("{file}: {err}");
                return Ok(EXIT_PARSE);
            }
        },
        TransformDirection::Ew2vw => match parse_instance(&text) {
            Ok(instance) => {
                let (vw, _) = graph::edge_to_vertex_weighted(&instance);
                serialize_vertex_weighted(&vw)
            }
            Err(err) => {
                eprintln!("{file}: {err}");
                return Ok(EXIT_PARSE);
            }
        },
    };
    emit(output.as_deref(), &rendered)?;
    Ok(0)
}

fn cmd_export_dot(file: &str, solution_file: Option<&str>) -> Result<u8> {
    let instance = match load_instance(file)? {
        Ok(instance) => instance,
        Err(code) => return Ok(code),
    };
    let solution = match solution_file {
        Some(path) => match load_solution(path, &instance)? {
            Ok(solution) => Some(solution),
            Err(code) => return Ok(code),
        },
        None => None,
    };
    print!("{}", export_dot(&instance, solution.as_ref()));
    Ok(0)
}

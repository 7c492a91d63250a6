//! `spg`: solve, inspect, generate and play shortest path games.

use std::io::{self, Read, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use spg_cli::{play, server};
use spg_core::cactus::{solve_cactus, solve_directed_cactus};
use spg_core::dag::solve_dag;
use spg_core::dispatch::{select, solve_with, Algorithm};
use spg_core::engine::price_of_anarchy_of;
use spg_core::gen::{self, CostRegime};
use spg_core::reductions::{
    eval_qbf, geography_to_spg, qsat_to_spg, solve_geography, GeographyInstance, QsatInstance, ReductionOutput,
};
use spg_core::rules::{replay, Player};
use spg_core::session::{Session, SessionMode};
use spg_core::{GameGraph, GraphDocument, Solution};

#[derive(Parser)]
#[command(name = "spg", version, about = "Subgame perfect equilibria of the two-player shortest path game")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a graph file and print the equilibrium play.
    Solve {
        /// Graph JSON file, or `-` for stdin.
        file: PathBuf,
        #[arg(long, default_value = "auto")]
        algorithm: Algorithm,
        /// Print the solution as JSON.
        #[arg(long)]
        json: bool,
        /// Reject zero-cost edges.
        #[arg(long)]
        strict: bool,
    },
    /// Decide whether the equilibrium costs at most CA for A and CB for B.
    Spgd {
        file: PathBuf,
        #[arg(long)]
        ca: u64,
        #[arg(long)]
        cb: u64,
        #[arg(long, default_value = "auto")]
        algorithm: Algorithm,
    },
    /// Price of anarchy: equilibrium total over the shortest path length.
    Poa {
        file: PathBuf,
        #[arg(long, default_value = "auto")]
        algorithm: Algorithm,
    },
    /// Validate a graph file and report its structural classes.
    Check {
        file: PathBuf,
        #[arg(long)]
        strict: bool,
    },
    /// Generate a random instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Write here instead of stdout.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Build a game from a Geography or QSAT instance.
    Reduce {
        #[command(subcommand)]
        kind: ReduceKind,
    },
    /// Play a game in the terminal.
    Play {
        file: PathBuf,
        /// Side played by the human; `both` for a two-player game.
        #[arg(long, value_enum, default_value = "a")]
        human: Side,
        /// Show what each move leads to under equilibrium play.
        #[arg(long)]
        hints: bool,
    },
    /// Run the HTTP API.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: SocketAddr,
        /// Idle seconds before a session is dropped.
        #[arg(long, default_value_t = server::DEFAULT_TTL.as_secs())]
        ttl: u64,
    },
    /// Time a solver over growing random instances.
    Bench {
        #[arg(long, value_enum, default_value = "cactus")]
        class: BenchClass,
        /// Instance sizes: vertices, or arcs for `dag`.
        #[arg(long, value_delimiter = ',', default_value = "1000,2000,4000,8000")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Timed runs per size; the fastest counts.
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

#[derive(Subcommand)]
enum GenKind {
    Cactus(GenArgs),
    DirectedCactus(GenArgs),
    Dag {
        #[command(flatten)]
        args: GenArgs,
        /// Probability of each forward arc.
        #[arg(long, default_value_t = 0.3)]
        p: f64,
    },
    /// Layered DAG with about ARCS arcs.
    LayeredDag {
        #[arg(long)]
        arcs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Bipartite Geography instance.
    Geography {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.4)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(clap::Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "uniform")]
    costs: CostKind,
    /// Upper bound for uniform costs.
    #[arg(long, default_value_t = 20)]
    max_cost: u64,
}

impl GenArgs {
    fn regime(&self) -> CostRegime {
        match self.costs {
            CostKind::Distinct => CostRegime::Distinct,
            CostKind::Ones => CostRegime::Ones,
            CostKind::Uniform => CostRegime::Uniform(0, self.max_cost),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CostKind {
    Distinct,
    Ones,
    Uniform,
}

#[derive(Subcommand)]
enum ReduceKind {
    /// From `{"n", "arcs", "s"}` JSON.
    Geography(ReduceArgs),
    /// From `n m` followed by m clause lines of three literals.
    Qsat(ReduceArgs),
}

#[derive(clap::Args)]
struct ReduceArgs {
    file: PathBuf,
    /// Solve both sides and print the comparison instead of the graph.
    #[arg(long)]
    decide: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    A,
    B,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchClass {
    Cactus,
    DirectedCactus,
    Dag,
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path, strict: bool) -> Result<GameGraph> {
    let text = read_input(path)?;
    let doc = GraphDocument::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    let opts = spg_core::graph::ValidateOptions { strict_positive: strict };
    Ok(GameGraph::from_document(&doc, opts)?)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display())),
        None => Ok(writeln!(io::stdout(), "{text}")?),
    }
}

/// Solve, then confirm the walk replays legally and reproduces the costs.
fn solve_checked(g: &GameGraph, algorithm: Algorithm) -> Result<(Solution, Algorithm)> {
    let (sol, used) = solve_with(g, algorithm)?;
    let report = replay(g, &sol.walk).with_context(|| format!("{used} produced an illegal walk"))?;
    if (report.cost_a, report.cost_b) != (sol.cost_a, sol.cost_b) {
        bail!("{used} reported ({}, {}) but its walk costs ({}, {})", sol.cost_a, sol.cost_b, report.cost_a, report.cost_b);
    }
    Ok((sol, used))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve { file, algorithm, json, strict } => {
            let g = load(&file, strict)?;
            let (sol, used) = solve_checked(&g, algorithm)?;
            if json {
                let labels: Vec<&str> = sol.walk.iter().map(|&v| g.label(v)).collect();
                let value = serde_json::json!({
                    "cost_a": sol.cost_a,
                    "cost_b": sol.cost_b,
                    "walk": sol.walk,
                    "walk_labels": labels,
                    "payers": sol.payers,
                    "algorithm": used.name(),
                    "node_count": sol.node_count,
                });
                println!("{value}");
            } else {
                println!("A={} B={} path={}", sol.cost_a, sol.cost_b, sol.walk_labels(&g));
                println!("algorithm={used} node_count={}", sol.node_count);
            }
        }
        Command::Spgd { file, ca, cb, algorithm } => {
            let g = load(&file, false)?;
            let (sol, _) = solve_checked(&g, algorithm)?;
            println!("{}", if sol.cost_a <= ca && sol.cost_b <= cb { "yes" } else { "no" });
        }
        Command::Poa { file, algorithm } => {
            let g = load(&file, false)?;
            let (sol, _) = solve_checked(&g, algorithm)?;
            let poa = price_of_anarchy_of(&g, &sol)?;
            let shortest = g.cooperative_shortest_path().finite().context("t is unreachable")?;
            println!("poa={poa} equilibrium={} shortest={shortest}", sol.total());
        }
        Command::Check { file, strict } => {
            let g = load(&file, strict)?;
            let class = g.classify();
            let flags = [
                ("tree", class.is_tree),
                ("dag", class.is_dag),
                ("cactus", class.is_cactus),
                ("directed-cactus", class.is_directed_cactus),
                ("bipartite", class.is_bipartite),
                ("general", class.is_general),
            ];
            let names: Vec<&str> = flags.iter().filter(|f| f.1).map(|f| f.0).collect();
            println!(
                "ok: {} vertices, {} edges, {}",
                g.n(),
                g.edges().len(),
                if g.is_directed() { "directed" } else { "undirected" }
            );
            println!("classes={}", names.join(","));
            println!("solver={}", select(&g));
        }
        Command::Gen { kind, out } => {
            let text = match kind {
                GenKind::Cactus(a) => gen::random_cactus(a.n, a.regime(), a.seed).to_document().serialize_pretty(),
                GenKind::DirectedCactus(a) => {
                    gen::random_directed_cactus(a.n, a.regime(), a.seed).to_document().serialize_pretty()
                }
                GenKind::Dag { args, p } => {
                    if !(p > 0.0 && p <= 1.0) {
                        bail!("--p must be in (0, 1]");
                    }
                    gen::random_dag(args.n, p, args.regime(), args.seed).to_document().serialize_pretty()
                }
                GenKind::LayeredDag { arcs, seed } => gen::layered_dag(arcs, seed)?.to_document().serialize(),
                GenKind::Geography { n, p, seed } => serde_json::to_string(&gen::random_geography(n, p, seed))?,
            };
            write_output(out.as_deref(), &text)?;
        }
        Command::Reduce { kind } => reduce(kind)?,
        Command::Play { file, human, hints } => {
            let g = load(&file, false)?;
            let mode = match human {
                Side::A => SessionMode::HumanVsEngine { human: Player::A },
                Side::B => SessionMode::HumanVsEngine { human: Player::B },
                Side::Both => SessionMode::HumanVsHuman,
            };
            let mut session = Session::new(g, mode, hints)?;
            play::run(&mut session, io::stdin().lock(), io::stdout().lock())?;
        }
        Command::Serve { addr, ttl } => {
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(server::serve(addr, Duration::from_secs(ttl)))?;
        }
        Command::Bench { class, sizes, seed, reps } => bench(class, &sizes, seed, reps)?,
    }
    Ok(())
}

fn emit_reduction(out: &ReductionOutput, path: Option<&Path>) -> Result<()> {
    eprintln!("cap_a={} cap_b={}", out.cap_a, out.cap_b);
    write_output(path, &out.graph.to_document().serialize_pretty())
}

fn reduce(kind: ReduceKind) -> Result<()> {
    match kind {
        ReduceKind::Geography(args) => {
            let geo = GeographyInstance::parse(&read_input(&args.file)?)?;
            let out = geography_to_spg(&geo)?;
            if !args.decide {
                return emit_reduction(&out, args.out.as_deref());
            }
            let winner = solve_geography(&geo)?;
            let (sol, _) = solve_checked(&out.graph, Algorithm::Auto)?;
            let within = sol.cost_a <= out.cap_a && sol.cost_b <= out.cap_b;
            println!("winner={winner:?} equilibrium=({},{}) spgd={}", sol.cost_a, sol.cost_b, if within { "yes" } else { "no" });
        }
        ReduceKind::Qsat(args) => {
            let q = QsatInstance::parse(&read_input(&args.file)?)?;
            let out = qsat_to_spg(&q)?;
            if !args.decide {
                return emit_reduction(&out, args.out.as_deref());
            }
            let truth = eval_qbf(&q)?;
            let (sol, _) = solve_checked(&out.graph, Algorithm::Auto)?;
            println!("qbf={truth} equilibrium=({},{})", sol.cost_a, sol.cost_b);
        }
    }
    Ok(())
}

fn bench(class: BenchClass, sizes: &[usize], seed: u64, reps: usize) -> Result<()> {
    let mut points = Vec::new();
    for &n in sizes {
        let g = match class {
            BenchClass::Cactus => gen::random_cactus(n, CostRegime::Uniform(0, 20), seed),
            BenchClass::DirectedCactus => gen::random_directed_cactus(n, CostRegime::Uniform(0, 20), seed),
            BenchClass::Dag => gen::layered_dag(n, seed)?,
        };
        let mut best = Duration::MAX;
        for _ in 0..reps.max(1) {
            let start = Instant::now();
            match class {
                BenchClass::Cactus => solve_cactus(&g)?,
                BenchClass::DirectedCactus => solve_directed_cactus(&g)?,
                BenchClass::Dag => solve_dag(&g)?,
            };
            best = best.min(start.elapsed());
        }
        println!("n={n} vertices={} arcs={} time={best:?}", g.n(), g.edges().len());
        points.push(((n as f64).ln(), best.as_secs_f64().max(1e-9).ln()));
    }
    if points.len() >= 2 {
        let k = points.len() as f64;
        let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
        let my = points.iter().map(|p| p.1).sum::<f64>() / k;
        let cov: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let var: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
        println!("log-log slope={:.2}", cov / var);
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

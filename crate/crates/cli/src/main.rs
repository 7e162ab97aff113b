mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use olabel::constructions::{projective_plane_incidence, torus_digraph, triple_copy};
use olabel::exact::{ExactError, DEFAULT_NODE_BUDGET};
use olabel::labeling::LabelReport;
use olabel::{
    block_degree_bound, block_inductive_label, block_span_bound, build_constraints,
    exact_lambda_with_budget, greedy_label, greedy_span_bound, ConstraintSet, OrientedGraph,
    PathPattern, VertexOrder,
};
use serde::Serialize;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "olabel",
    version,
    about = "Oriented L(2,1)-labeling experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it as an edge list (or DOT).
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        /// Torus side length.
        #[arg(long)]
        k: Option<usize>,
        /// Prime order of the projective plane.
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        arcs: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edges)]
        format: GraphFormat,
        /// Output file; the graph goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Label a graph with the greedy or block-inductive algorithm.
    Label {
        file: PathBuf,
        #[arg(long, default_value = "P1")]
        s: ConstraintSet,
        #[arg(long, value_enum, default_value_t = Algorithm::Greedy)]
        alg: Algorithm,
        #[arg(long, value_enum, default_value_t = Order::Id)]
        order: Order,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Labeling file (`vertex label` per line).
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON report; printed to stdout when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Compute the exact minimum span.
    Exact {
        file: PathBuf,
        #[arg(long, default_value = "P1")]
        s: ConstraintSet,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Accepted for symmetry with `verify`; a single search is sequential.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// JSON result; printed to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification sweep; exits 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: verify::Suite,
        #[arg(long, default_value_t = 12)]
        k_max: usize,
        /// Comma-separated prime orders.
        #[arg(long, value_delimiter = ',')]
        q: Vec<usize>,
        /// Maximum vertex count of random instances.
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Worker threads for the sweep (0 = all cores). Results do not depend on it.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Torus,
    Plane,
    Triple,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Edges,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Algorithm {
    Greedy,
    Block,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Order {
    Id,
    Rev,
    Rand,
    Deg,
}

/// What `run` asks `main` to exit with.
enum Status {
    Ok,
    VerifyFailed,
    BudgetExceeded,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::VerifyFailed) => ExitCode::from(EXIT_VERIFY_FAILED),
        Ok(Status::BudgetExceeded) => ExitCode::from(EXIT_BUDGET),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Gen {
            kind,
            k,
            q,
            n,
            arcs,
            seed,
            format,
            out,
        } => {
            let g = match kind {
                GenKind::Torus => torus_digraph(require(k, "--k")?)?,
                GenKind::Plane => projective_plane_incidence(require(q, "--q")?)?,
                GenKind::Triple => triple_copy(require(q, "--q")?)?,
                GenKind::Random => olabel::random::random_oriented(
                    require(n, "--n")?,
                    require(arcs, "--arcs")?,
                    seed,
                )?,
            };
            let text = match format {
                GraphFormat::Edges => g.to_edge_list(),
                GraphFormat::Dot => g.to_dot(),
            };
            let summary = format!(
                "n={} arcs={} max_in_out_degree={}",
                g.vertex_count(),
                g.arc_count(),
                g.max_in_out_degree()
            );
            match out {
                Some(path) => {
                    write(&path, &text)?;
                    println!("{summary}");
                }
                None => {
                    print!("{text}");
                    eprintln!("{summary}");
                }
            }
            Ok(Status::Ok)
        }
        Command::Label {
            file,
            s,
            alg,
            order,
            seed,
            out,
            report,
        } => {
            let g = read_graph(&file)?;
            let only_p1 = ConstraintSet::only(PathPattern::P1);
            let (f, k, bound) = match alg {
                Algorithm::Greedy => {
                    let order = match order {
                        Order::Id => VertexOrder::Identity,
                        Order::Rev => VertexOrder::Reverse,
                        Order::Rand => VertexOrder::Random(seed),
                        Order::Deg => VertexOrder::DegreeDescending,
                    };
                    let k = g.max_in_out_degree();
                    (
                        greedy_label(&g, s, &order.permutation(&g)),
                        k,
                        greedy_span_bound(s, k),
                    )
                }
                Algorithm::Block => {
                    if s != only_p1 {
                        bail!("BlockAlgorithmRequiresP1: the block algorithm labels S = {{P1}} only, got {s}");
                    }
                    let k = block_degree_bound(&g);
                    (block_inductive_label(&g), k, block_span_bound(k))
                }
            };
            let c = build_constraints(&g, s);
            let label = LabelReport::new(&c, &f, bound);
            let summary = format!(
                "span={} bound={} bound_satisfied={} valid={} k={k}",
                label.span, label.bound, label.bound_satisfied, label.valid
            );
            // keep stdout pure JSON when the report goes there
            if report.is_some() {
                println!("{summary}");
            } else {
                eprintln!("{summary}");
            }
            if let Some(path) = out {
                write(&path, &f.to_text())?;
            }
            let json = serde_json::to_string_pretty(&LabelRun {
                algorithm: alg,
                s: s.to_string(),
                order: (alg == Algorithm::Greedy).then_some(order),
                n: g.vertex_count(),
                k,
                report: label,
            })?;
            emit(report.as_deref(), &json)?;
            Ok(Status::Ok)
        }
        Command::Exact {
            file,
            s,
            budget,
            threads: _,
            out,
        } => {
            let g = read_graph(&file)?;
            let (result, status) = match exact_lambda_with_budget(&g, s, budget) {
                Ok(r) => (r, Status::Ok),
                Err(ExactError::BudgetExceeded { nodes, partial }) => {
                    eprintln!(
                        "budget exhausted after {nodes} nodes; best span found {}",
                        partial.lambda
                    );
                    (*partial, Status::BudgetExceeded)
                }
                Err(e) => return Err(e.into()),
            };
            emit(out.as_deref(), &serde_json::to_string_pretty(&result)?)?;
            if out.is_some() {
                println!(
                    "lambda={} exact={} nodes={}",
                    result.lambda, result.exact, result.nodes
                );
            }
            Ok(status)
        }
        Command::Verify {
            suite,
            k_max,
            q,
            n,
            count,
            seed,
            budget,
            threads,
            out,
        } => {
            let params = verify::Params {
                k_max,
                q,
                n,
                count,
                seed,
                budget,
            };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()?;
            let report = pool.install(|| verify::run(suite, &params))?;
            for check in &report.checks {
                println!(
                    "[{}] {}: {}",
                    if check.passed { "PASS" } else { "FAIL" },
                    check.name,
                    check.detail
                );
            }
            for finding in &report.findings {
                println!("finding: {finding}");
            }
            let json = serde_json::to_string_pretty(&report)?;
            if let Some(path) = out {
                write(&path, &json)?;
            }
            Ok(if !report.passed {
                Status::VerifyFailed
            } else if report.budget_exceeded {
                Status::BudgetExceeded
            } else {
                Status::Ok
            })
        }
    }
}

#[derive(Serialize)]
struct LabelRun {
    algorithm: Algorithm,
    s: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<Order>,
    n: usize,
    /// Degree parameter the bound is instantiated at.
    k: usize,
    #[serde(flatten)]
    report: LabelReport,
}

fn require(value: Option<usize>, flag: &str) -> Result<usize> {
    value.with_context(|| format!("{flag} is required for this kind"))
}

fn read_graph(path: &Path) -> Result<OrientedGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    OrientedGraph::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Writes to `path`, or to stdout when there is none.
fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write(p, text),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

//! File-based command line interface; kept in the library so the binary
//! stays a three-line shim.
//!
//! Conventions: scalar results are JSON on stdout (or `--out`), tabular
//! results are CSV. Every float is rounded to 12 significant digits before
//! serialization so reruns are byte-identical, and every file written
//! through `--out...` gets a sibling `<file>.manifest.json` recording the
//! exact invocation (the manifest carries wall time and is the one output
//! that is not byte-stable).

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cover::{self, CommunityFormat, Cover};
use crate::detect::{self, DetectConfig, VertexOrdering};
use crate::experiments::{self, InitiatorPolicy, PerturbStrategy, PerturbationSpec};
use crate::graph::{self, Graph};
use crate::metrics;
use crate::synth;
use crate::validate;
use crate::{round_sig, Error, Result};

#[derive(Parser)]
#[command(
    name = "genperm",
    version,
    about = "Vertex-centric community scoring, detection, and evaluation"
)]
struct Cli {
    /// Treat node ids in all input and output files as 1-based.
    #[arg(long, global = true)]
    one_indexed: bool,
    /// Seed for every randomized operation.
    #[arg(long, global = true, env = "GENPERM_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads for trial/sweep parallelism; results do not depend on
    /// this.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Auto,
    /// One community per line.
    Lines,
    /// `node c1 c2 ...` per line.
    Membership,
}

impl From<FormatArg> for CommunityFormat {
    fn from(value: FormatArg) -> Self {
        match value {
            FormatArg::Auto => CommunityFormat::Auto,
            FormatArg::Lines => CommunityFormat::CommunityPerLine,
            FormatArg::Membership => CommunityFormat::NodeMembership,
        }
    }
}

#[derive(Args)]
struct GraphArg {
    /// Edge-list file: one `u v` pair per line, `#` comments ignored.
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args)]
struct CoverArg {
    /// Community file.
    #[arg(long)]
    cover: PathBuf,
    /// Community file layout.
    #[arg(long, value_enum, default_value = "auto")]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Command {
    /// Score a cover with GenPerm, EQ, Q_ov, CC and OC.
    Score {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        cover: CoverArg,
        /// Also write the per-(vertex, community) score table as CSV here.
        #[arg(long)]
        per_vertex: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Detect communities by GenPerm maximization.
    Detect {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 15)]
        max_iter: usize,
        #[arg(long, value_enum, default_value = "id")]
        order: OrderArg,
        /// Run independently per connected component instead of rejecting
        /// disconnected input.
        #[arg(long)]
        per_component: bool,
        /// Output community file (one community per line).
        #[arg(long)]
        out_cover: PathBuf,
        /// JSON run report (iterations, convergence, objective history).
        #[arg(long)]
        out_report: Option<PathBuf>,
    },
    /// Compare a detected cover against ground truth (ONMI, Omega, F-Score).
    Validate {
        /// Ground-truth community file.
        #[arg(long)]
        truth: PathBuf,
        /// Detected community file.
        #[arg(long)]
        detected: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        format: FormatArg,
        /// Optional edge list pinning the node universe; otherwise the
        /// largest id mentioned in either cover defines it.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Also report the chance-adjusted Omega variant.
        #[arg(long)]
        adjusted_omega: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank-correlate scoring metrics against validation metrics over a set
    /// of candidate covers.
    Rankcorr {
        #[command(flatten)]
        graph: GraphArg,
        /// Ground-truth community file.
        #[arg(long)]
        truth: PathBuf,
        /// Candidate list: one `name path` pair per line.
        #[arg(long)]
        candidates: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Perturb a ground-truth cover, or sweep perturbation intensities.
    Perturb {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        cover: CoverArg,
        /// Strategies to apply (sweep mode applies each).
        #[arg(long, value_enum, default_values_t = vec![StrategyArg::Edge])]
        strategy: Vec<StrategyArg>,
        /// Intensities; a single value emits one perturbed cover, several
        /// switch to sweep mode and emit a CSV of normalized metric means.
        #[arg(long, value_delimiter = ',', required = true)]
        intensity: Vec<f64>,
        /// Trials per grid cell in sweep mode.
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a community-centric subnetwork around a random overlapping
    /// node.
    Sample {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        cover: CoverArg,
        #[arg(long)]
        out_graph: PathBuf,
        #[arg(long)]
        out_cover: PathBuf,
    },
    /// Structure analyses: score profile, farness, assortativity, layered
    /// removal, constant communities.
    Analyze {
        #[command(subcommand)]
        kind: AnalyzeCommand,
    },
    /// Simulate push-based message spreading from selected initiators.
    Spread {
        #[command(flatten)]
        graph: GraphArg,
        /// Community file; required for the genperm policy.
        #[arg(long)]
        cover: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        format: FormatArg,
        #[arg(long, value_enum, default_value = "random")]
        policy: PolicyArg,
        /// Number of initiators.
        #[arg(short = 'k', long, default_value_t = 1)]
        initiators: usize,
        /// Independent simulation runs.
        #[arg(long, default_value_t = 1)]
        runs: usize,
        /// Write the informed-count trace of the first run as CSV here.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit synthetic benchmark graphs with ground-truth covers.
    Generate {
        #[command(subcommand)]
        kind: GenerateCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Id,
    Shuffle,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum StrategyArg {
    Edge,
    Random,
    Community,
}

impl std::fmt::Display for StrategyArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            StrategyArg::Edge => "edge",
            StrategyArg::Random => "random",
            StrategyArg::Community => "community",
        };
        write!(f, "{name}")
    }
}

impl From<StrategyArg> for PerturbStrategy {
    fn from(value: StrategyArg) -> Self {
        match value {
            StrategyArg::Edge => PerturbStrategy::Edge,
            StrategyArg::Random => PerturbStrategy::Random,
            StrategyArg::Community => PerturbStrategy::Community,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Random,
    Degree,
    Genperm,
}

impl From<PolicyArg> for InitiatorPolicy {
    fn from(value: PolicyArg) -> Self {
        match value {
            PolicyArg::Random => InitiatorPolicy::Random,
            PolicyArg::Degree => InitiatorPolicy::Degree,
            PolicyArg::Genperm => InitiatorPolicy::Genperm,
        }
    }
}

#[derive(Subcommand)]
enum AnalyzeCommand {
    /// Distribution of per-(vertex, community) scores over 20 bins.
    Profile {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        cover: CoverArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Farness vs score inside one community.
    Farness {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        cover: CoverArg,
        /// Community index (in file order after deduplication).
        #[arg(long)]
        community: usize,
        #[arg(long)]
        per_component: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score assortativity per community.
    Assortativity {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        cover: CoverArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Layered node-removal impact on re-detection (mean ONMI).
    Layers {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        cover: CoverArg,
        #[arg(long, value_delimiter = ',', required = true)]
        x_grid: Vec<f64>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 15)]
        max_iter: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Constant communities across seeded vertex orderings.
    Constant {
        #[command(flatten)]
        graph: GraphArg,
        /// Number of shuffled detection runs.
        #[arg(long, default_value_t = 10)]
        runs: usize,
        #[arg(long, default_value_t = 15)]
        max_iter: usize,
        #[arg(long)]
        per_component: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenerateCommand {
    /// Three cliques joined X-Y-Z by two single edges.
    Chain {
        /// Clique sizes as `x,y,z`.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        out_graph: PathBuf,
        #[arg(long)]
        out_cover: PathBuf,
    },
    /// A circle of cliques joined through bridging vertices.
    Ring {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        out_graph: PathBuf,
        #[arg(long)]
        out_cover: PathBuf,
    },
    /// A central clique with surrounding cliques sharing one edge each.
    Star {
        #[arg(long)]
        center: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        out_graph: PathBuf,
        #[arg(long)]
        out_cover: PathBuf,
    },
    /// Two cliques joined by a single bridge edge.
    Bridge {
        /// Clique sizes as `a,b`.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        out_graph: PathBuf,
        #[arg(long)]
        out_cover: PathBuf,
    },
    /// Seeded planted-overlap benchmark graph.
    Planted {
        #[arg(long, value_delimiter = ',', required = true)]
        blocks: Vec<usize>,
        #[arg(long, default_value_t = 0.0)]
        overlap: f64,
        #[arg(long)]
        p_in: f64,
        #[arg(long)]
        p_out: f64,
        #[arg(long)]
        out_graph: PathBuf,
        #[arg(long)]
        out_cover: PathBuf,
    },
}

/// Parses arguments from the process environment and runs; returns the
/// process exit code (0 ok, 1 data error; clap exits 2 on argument errors).
pub fn run() -> i32 {
    env_logger::init();
    let cli = Cli::parse();
    let ctx = Context {
        one_indexed: cli.one_indexed,
        seed: cli.seed,
        argv: std::env::args().collect(),
        started: std::time::Instant::now(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build();
    let result = match pool {
        Ok(pool) => pool.install(|| dispatch(&cli.command, &ctx)),
        Err(e) => Err(Error::InvalidParameter(format!("thread pool: {e}"))),
    };
    match result {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}

struct Context {
    one_indexed: bool,
    seed: u64,
    argv: Vec<String>,
    started: std::time::Instant,
}

impl Context {
    fn load_graph(&self, path: &Path) -> Result<Graph> {
        let parsed = graph::read_edge_list(path, self.one_indexed)?;
        if parsed.report.duplicate_edges_dropped + parsed.report.self_loops_dropped > 0 {
            log::info!(
                "{}: dropped {} duplicate edges and {} self-loops",
                path.display(),
                parsed.report.duplicate_edges_dropped,
                parsed.report.self_loops_dropped
            );
        }
        Ok(parsed.graph)
    }

    fn load_cover(&self, graph: &Graph, path: &Path, format: FormatArg) -> Result<Cover> {
        let parsed = cover::read_communities(path, format.into(), self.one_indexed)?;
        let (cover, report) = Cover::build(graph, parsed.communities)?;
        if report.implicit_singletons > 0 {
            log::info!(
                "{}: wrapped {} uncovered nodes into singleton communities",
                path.display(),
                report.implicit_singletons
            );
        }
        Ok(cover)
    }

    /// Writes `content` to `path` when given, stdout otherwise.
    fn emit(&self, path: Option<&Path>, content: &str) -> Result<()> {
        match path {
            None => {
                print!("{content}");
                std::io::stdout().flush()?;
                Ok(())
            }
            Some(path) => self.write_file(path, content),
        }
    }

    fn write_file(&self, path: &Path, content: &str) -> Result<()> {
        std::fs::write(path, content)?;
        let manifest = json!({
            "argv": self.argv,
            "seed": self.seed,
            "one_indexed": self.one_indexed,
            "version": env!("CARGO_PKG_VERSION"),
            "wall_time_secs": self.started.elapsed().as_secs_f64(),
        });
        std::fs::write(manifest_path_for(path), format!("{manifest:#}\n"))?;
        Ok(())
    }

    fn emit_json<T: Serialize>(&self, path: Option<&Path>, value: &T) -> Result<()> {
        let mut value = serde_json::to_value(value).expect("serializable report");
        round_json(&mut value);
        self.emit(path, &format!("{value:#}\n"))
    }
}

fn manifest_path_for(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    out.with_file_name(name)
}

/// Rounds every float in a JSON tree to 12 significant digits.
fn round_json(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if n.as_i64().is_none() && n.as_u64().is_none() {
                if let Some(f) = n.as_f64() {
                    if let Some(rounded) = serde_json::Number::from_f64(round_sig(f)) {
                        *value = Value::Number(rounded);
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

fn fmt12(x: f64) -> String {
    format!("{}", round_sig(x))
}

fn dispatch(command: &Command, ctx: &Context) -> Result<()> {
    match command {
        Command::Score {
            graph,
            cover,
            per_vertex,
            out,
        } => {
            let g = ctx.load_graph(&graph.graph)?;
            let c = ctx.load_cover(&g, &cover.cover, cover.format)?;
            let scores = metrics::score_all(&g, &c)?;
            if let Some(path) = per_vertex {
                let mut table = String::from("v,c,genperm\n");
                let shift = usize::from(ctx.one_indexed);
                for v in 0..g.node_count() {
                    for &cid in c.memberships_of(v) {
                        let value = metrics::genperm_vc(&g, &c, v, cid)?;
                        table.push_str(&format!("{},{},{}\n", v + shift, cid, fmt12(value)));
                    }
                }
                ctx.write_file(path, &table)?;
            }
            let report = json!({
                "genperm": scores[0],
                "eq": scores[1],
                "qov": scores[2],
                "cc": scores[3],
                "oc": scores[4],
                "per_vertex_path": per_vertex.as_ref().map(|p| p.display().to_string()),
            });
            ctx.emit_json(out.as_deref(), &report)
        }

        Command::Detect {
            graph,
            max_iter,
            order,
            per_component,
            out_cover,
            out_report,
        } => {
            let g = ctx.load_graph(&graph.graph)?;
            let config = DetectConfig {
                max_iter: *max_iter,
                ordering: match order {
                    OrderArg::Id => VertexOrdering::AscendingId,
                    OrderArg::Shuffle => VertexOrdering::SeededShuffle(ctx.seed),
                },
                objective_tolerance: 0.0,
                per_component: *per_component,
            };
            let result = detect::max_genperm(&g, &config)?;
            let mut buf = Vec::new();
            cover::write_communities(&mut buf, &result.cover, ctx.one_indexed)?;
            ctx.write_file(out_cover, &String::from_utf8(buf).expect("ascii"))?;
            let report = json!({
                "communities": result.cover.community_count(),
                "iterations": result.iterations_used,
                "converged": result.converged,
                "objective_history": result.objective_history,
                "genperm": result.objective_history.last(),
            });
            ctx.emit_json(out_report.as_deref(), &report)
        }

        Command::Validate {
            truth,
            detected,
            format,
            graph,
            adjusted_omega,
            out,
        } => {
            let truth_sets = cover::read_communities(truth, (*format).into(), ctx.one_indexed)?;
            let detected_sets =
                cover::read_communities(detected, (*format).into(), ctx.one_indexed)?;
            let g = match graph {
                Some(path) => ctx.load_graph(path)?,
                None => {
                    let max_id = truth_sets
                        .communities
                        .iter()
                        .chain(detected_sets.communities.iter())
                        .flatten()
                        .copied()
                        .max()
                        .ok_or(Error::EmptyCover)?;
                    Graph::build(&[], Some(max_id + 1)).0
                }
            };
            let truth_cover = Cover::build(&g, truth_sets.communities)?.0;
            let detected_cover = Cover::build(&g, detected_sets.communities)?.0;
            let report = validate::validation_report(&truth_cover, &detected_cover)?;
            let mut value = serde_json::to_value(&report).expect("serializable");
            if *adjusted_omega {
                value["omega_adjusted"] = json!(validate::omega_index_adjusted(
                    &truth_cover,
                    &detected_cover
                )?);
            }
            ctx.emit_json(out.as_deref(), &value)
        }

        Command::Rankcorr {
            graph,
            truth,
            candidates,
            format,
            out,
        } => {
            let g = ctx.load_graph(&graph.graph)?;
            let truth_cover = ctx.load_cover(&g, truth, *format)?;
            let listing = std::fs::read_to_string(candidates)?;
            let mut named = Vec::new();
            for (idx, line) in listing.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (name, path) =
                    line.split_once(char::is_whitespace)
                        .ok_or_else(|| Error::Parse {
                            path: candidates.display().to_string(),
                            line: idx + 1,
                            message: "expected `name path`".to_string(),
                        })?;
                let cover = ctx.load_cover(&g, Path::new(path.trim()), *format)?;
                named.push((name.to_string(), cover));
            }
            let result = validate::rank_correlation_protocol(&g, &truth_cover, &named)?;
            ctx.emit_json(out.as_deref(), &result)
        }

        Command::Perturb {
            graph,
            cover,
            strategy,
            intensity,
            trials,
            out,
        } => {
            let g = ctx.load_graph(&graph.graph)?;
            let c = ctx.load_cover(&g, &cover.cover, cover.format)?;
            let strategies: Vec<PerturbStrategy> = strategy.iter().map(|&s| s.into()).collect();
            if intensity.len() == 1 && *trials == 1 && strategies.len() == 1 {
                let spec = PerturbationSpec::new(strategies[0], intensity[0], ctx.seed)?;
                let perturbed = experiments::perturb(&g, &c, &spec)?;
                let mut buf = Vec::new();
                cover::write_communities(&mut buf, &perturbed, ctx.one_indexed)?;
                ctx.emit(out.as_deref(), &String::from_utf8(buf).expect("ascii"))
            } else {
                let cells = experiments::robustness_sweep(
                    &g,
                    &c,
                    &strategies,
                    intensity,
                    *trials,
                    ctx.seed,
                )?;
                let mut csv = String::from("strategy,p,metric,value\n");
                for cell in cells {
                    csv.push_str(&format!(
                        "{},{},{},{}\n",
                        cell.strategy,
                        cell.intensity,
                        cell.metric,
                        fmt12(cell.value)
                    ));
                }
                ctx.emit(out.as_deref(), &csv)
            }
        }

        Command::Sample {
            graph,
            cover,
            out_graph,
            out_cover,
        } => {
            let g = ctx.load_graph(&graph.graph)?;
            let c = ctx.load_cover(&g, &cover.cover, cover.format)?;
            let sample = experiments::sample_subnetwork(&g, &c, ctx.seed)?;
            let mut buf = Vec::new();
            graph::write_edge_list(&mut buf, &sample.graph, ctx.one_indexed)?;
            ctx.write_file(out_graph, &String::from_utf8(buf).expect("ascii"))?;
            let mut buf = Vec::new();
            cover::write_communities(&mut buf, &sample.cover, ctx.one_indexed)?;
            ctx.write_file(out_cover, &String::from_utf8(buf).expect("ascii"))?;
            let shift = usize::from(ctx.one_indexed);
            let report = json!({
                "anchor": sample.anchor_original + shift,
                "nodes": sample.graph.node_count(),
                "edges": sample.graph.edge_count(),
                "communities": sample.cover.community_count(),
            });
            ctx.emit_json(None, &report)
        }

        Command::Analyze { kind } => analyze(kind, ctx),

        Command::Spread {
            graph,
            cover,
            format,
            policy,
            initiators,
            runs,
            trace,
            out,
        } => {
            let g = ctx.load_graph(&graph.graph)?;
            let c = match cover {
                Some(path) => ctx.load_cover(&g, path, *format)?,
                None => {
                    if matches!(policy, PolicyArg::Genperm) {
                        return Err(Error::InvalidParameter(
                            "the genperm policy needs --cover".to_string(),
                        ));
                    }
                    Cover::build(&g, vec![(0..g.node_count()).collect()])?.0
                }
            };
            let selected =
                experiments::select_initiators(&g, &c, (*policy).into(), *initiators, ctx.seed)?;
            if *runs == 0 {
                return Err(Error::InvalidParameter("need at least one run".to_string()));
            }
            let steps: Vec<usize> = (0..*runs)
                .map(|r| {
                    experiments::spread(&g, &selected, crate::derive_seed(ctx.seed, r as u64))
                        .map(|t| t.steps())
                })
                .collect::<Result<_>>()?;
            if let Some(path) = trace {
                let t = experiments::spread(&g, &selected, crate::derive_seed(ctx.seed, 0))?;
                let mut csv = String::from("step,informed\n");
                for (step, informed) in t.informed_per_step.iter().enumerate() {
                    csv.push_str(&format!("{step},{informed}\n"));
                }
                ctx.write_file(path, &csv)?;
            }
            let mean = steps.iter().sum::<usize>() as f64 / steps.len() as f64;
            let shift = usize::from(ctx.one_indexed);
            let report = json!({
                "policy": match policy {
                    PolicyArg::Random => "random",
                    PolicyArg::Degree => "degree",
                    PolicyArg::Genperm => "genperm",
                },
                "initiators": selected.iter().map(|v| v + shift).collect::<Vec<usize>>(),
                "runs": runs,
                "mean_steps": mean,
            });
            ctx.emit_json(out.as_deref(), &report)
        }

        Command::Generate { kind } => generate(kind, ctx),
    }
}

fn analyze(kind: &AnalyzeCommand, ctx: &Context) -> Result<()> {
    match kind {
        AnalyzeCommand::Profile { graph, cover, out } => {
            let g = ctx.load_graph(&graph.graph)?;
            let c = ctx.load_cover(&g, &cover.cover, cover.format)?;
            let profile = experiments::binned_profile(&g, &c)?;
            let mut csv = String::from(
                "bin,low,high,fraction,mean_memberships,mean_internal,mean_clustering,mean_degree\n",
            );
            for (i, bin) in profile.bins.iter().enumerate() {
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    i + 1,
                    fmt12(-1.0 + i as f64 * 0.1),
                    fmt12(-1.0 + (i + 1) as f64 * 0.1),
                    fmt12(bin.fraction),
                    fmt12(bin.mean_memberships),
                    fmt12(bin.mean_internal),
                    fmt12(bin.mean_clustering),
                    fmt12(bin.mean_degree)
                ));
            }
            ctx.emit(out.as_deref(), &csv)
        }
        AnalyzeCommand::Farness {
            graph,
            cover,
            community,
            per_component,
            out,
        } => {
            let g = ctx.load_graph(&graph.graph)?;
            let c = ctx.load_cover(&g, &cover.cover, cover.format)?;
            if *community >= c.community_count() {
                return Err(Error::InvalidParameter(format!(
                    "community index {community} out of range (cover has {})",
                    c.community_count()
                )));
            }
            let entries = experiments::farness_profile(&g, &c, *community, *per_component)?;
            let shift = usize::from(ctx.one_indexed);
            let mut csv = String::from("node,farness,genperm\n");
            for e in entries {
                csv.push_str(&format!(
                    "{},{},{}\n",
                    e.node + shift,
                    fmt12(e.farness),
                    fmt12(e.genperm)
                ));
            }
            ctx.emit(out.as_deref(), &csv)
        }
        AnalyzeCommand::Assortativity { graph, cover, out } => {
            let g = ctx.load_graph(&graph.graph)?;
            let c = ctx.load_cover(&g, &cover.cover, cover.format)?;
            let mut csv = String::from("community,size,assortativity\n");
            for cid in 0..c.community_count() {
                let value = match experiments::genperm_assortativity(&g, &c, cid) {
                    Ok(Some(r)) => fmt12(r),
                    Ok(None) => "degenerate".to_string(),
                    Err(Error::Degenerate(_)) => "no-internal-edge".to_string(),
                    Err(e) => return Err(e),
                };
                csv.push_str(&format!("{},{},{}\n", cid, c.members(cid).len(), value));
            }
            ctx.emit(out.as_deref(), &csv)
        }
        AnalyzeCommand::Layers {
            graph,
            cover,
            x_grid,
            trials,
            max_iter,
            out,
        } => {
            let g = ctx.load_graph(&graph.graph)?;
            let c = ctx.load_cover(&g, &cover.cover, cover.format)?;
            let config = DetectConfig {
                max_iter: *max_iter,
                per_component: true,
                ..DetectConfig::default()
            };
            let detector =
                |g: &Graph| -> Result<Cover> { Ok(detect::max_genperm(g, &config)?.cover) };
            let table = experiments::layered_removal(&g, &c, &detector, x_grid, *trials, ctx.seed)?;
            let mut csv = String::from("layer,x,mean_onmi\n");
            for (layer, row) in table.iter().enumerate() {
                for (i, value) in row.iter().enumerate() {
                    csv.push_str(&format!("{},{},{}\n", layer + 1, x_grid[i], fmt12(*value)));
                }
            }
            ctx.emit(out.as_deref(), &csv)
        }
        AnalyzeCommand::Constant {
            graph,
            runs,
            max_iter,
            per_component,
            out,
        } => {
            let g = ctx.load_graph(&graph.graph)?;
            let covers: Vec<Cover> = (0..*runs)
                .map(|r| {
                    let config = DetectConfig {
                        max_iter: *max_iter,
                        ordering: VertexOrdering::SeededShuffle(crate::derive_seed(
                            ctx.seed, r as u64,
                        )),
                        objective_tolerance: 0.0,
                        per_component: *per_component,
                    };
                    Ok(detect::max_genperm(&g, &config)?.cover)
                })
                .collect::<Result<_>>()?;
            let (groups, phi) = detect::constant_communities(&covers)?;
            let report = json!({
                "runs": runs,
                "groups": groups.len(),
                "phi": phi,
                "group_sizes": groups.iter().map(|g| g.len()).collect::<Vec<usize>>(),
            });
            ctx.emit_json(out.as_deref(), &report)
        }
    }
}

fn generate(kind: &GenerateCommand, ctx: &Context) -> Result<()> {
    let (graph, cover, out_graph, out_cover, summary) = match kind {
        GenerateCommand::Chain {
            sizes,
            out_graph,
            out_cover,
        } => {
            if sizes.len() != 3 {
                return Err(Error::InvalidParameter(
                    "chain needs exactly three clique sizes".to_string(),
                ));
            }
            let chain = synth::gen_clique_chain(sizes[0], sizes[1], sizes[2])?;
            let summary = json!({
                "topology": "chain",
                "nodes": chain.graph.node_count(),
                "edges": chain.graph.edge_count(),
            });
            (chain.graph, chain.cover, out_graph, out_cover, summary)
        }
        GenerateCommand::Ring {
            count,
            size,
            out_graph,
            out_cover,
        } => {
            let ring = synth::gen_clique_ring(*count, *size)?;
            let summary = json!({
                "topology": "ring",
                "nodes": ring.graph.node_count(),
                "edges": ring.graph.edge_count(),
            });
            (ring.graph, ring.cover, out_graph, out_cover, summary)
        }
        GenerateCommand::Star {
            center,
            sizes,
            out_graph,
            out_cover,
        } => {
            let star = synth::gen_clique_star(*center, sizes)?;
            let summary = json!({
                "topology": "star",
                "nodes": star.graph.node_count(),
                "edges": star.graph.edge_count(),
                "overlap_vertices": star.overlap.len(),
            });
            (star.graph, star.cover, out_graph, out_cover, summary)
        }
        GenerateCommand::Bridge {
            sizes,
            out_graph,
            out_cover,
        } => {
            if sizes.len() != 2 {
                return Err(Error::InvalidParameter(
                    "bridge needs exactly two clique sizes".to_string(),
                ));
            }
            let pair = synth::gen_bridge_pair(sizes[0], sizes[1])?;
            let summary = json!({
                "topology": "bridge-pair",
                "nodes": pair.graph.node_count(),
                "edges": pair.graph.edge_count(),
            });
            (pair.graph, pair.cover, out_graph, out_cover, summary)
        }
        GenerateCommand::Planted {
            blocks,
            overlap,
            p_in,
            p_out,
            out_graph,
            out_cover,
        } => {
            let planted = synth::gen_planted_overlap(blocks, *overlap, *p_in, *p_out, ctx.seed)?;
            let summary = json!({
                "topology": "planted",
                "nodes": planted.graph.node_count(),
                "edges": planted.graph.edge_count(),
                "seed": ctx.seed,
            });
            (planted.graph, planted.cover, out_graph, out_cover, summary)
        }
    };
    let mut buf = Vec::new();
    graph::write_edge_list(&mut buf, &graph, ctx.one_indexed)?;
    ctx.write_file(out_graph, &String::from_utf8(buf).expect("ascii"))?;
    let mut buf = Vec::new();
    cover::write_communities(&mut buf, &cover, ctx.one_indexed)?;
    ctx.write_file(out_cover, &String::from_utf8(buf).expect("ascii"))?;
    ctx.emit_json(None, &summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn manifest_path_appends_suffix() {
        assert_eq!(
            manifest_path_for(Path::new("/tmp/x/cover.txt")),
            PathBuf::from("/tmp/x/cover.txt.manifest.json")
        );
    }

    #[test]
    fn round_json_touches_only_floats() {
        let mut v = json!({"a": 1.0 / 3.0, "b": 7, "c": [0.1 + 0.2], "d": "s"});
        round_json(&mut v);
        assert_eq!(v["a"], json!(0.333333333333));
        assert_eq!(v["b"], json!(7));
        assert_eq!(v["c"][0], json!(0.3));
        assert_eq!(v["d"], json!("s"));
    }
}

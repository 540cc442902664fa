//! Command-line interface: distances, exact solvers, reduction constructions,
//! geodesic enumeration, and the named verification drivers.
//!
//! Exit codes: 0 = yes/solved, 1 = no (for decision commands and failed
//! verification runs), 2 = error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use swapmedian::geodesy::{
    closest_lower_bound, count_geodesics, enumerate_geodesics, median_lower_bound,
    MedianInstance,
};
use swapmedian::graphs::pad_graph;
use swapmedian::io::{graph_to_text, parse_graph, InstanceDocument, Verdict, VerificationReport};
use swapmedian::reductions::{equalize_distances, reduction_instance};
use swapmedian::solvers::{
    exact_closest, exact_median, lb_achievability_median, LbAchievability, SolverConfig,
};
use swapmedian::verify::{run_check, search_type3, VerifyScope, CHECK_IDS};

#[derive(Parser)]
#[command(
    name = "swapmedian",
    version,
    about = "Swap-distance medians, closest permutations, and graph reductions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the pairwise swap-distance matrix of an instance file.
    Dist {
        file: PathBuf,
        /// Also print each permutation's canonical cycle decomposition.
        #[arg(long)]
        cycles: bool,
    },
    /// Solve or bound the median (minimum total distance) problem.
    Median(SolveArgs),
    /// Solve or bound the closest (minimum radius) problem.
    Closest(SolveArgs),
    /// Build instances and graphs via the reduction constructions.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Enumerate or count minimum-length swap sequences between two permutations.
    #[command(subcommand)]
    Geodesics(GeodesicsCommand),
    /// Run a named verification driver and stream one report per instance.
    Verify(VerifyArgs),
    /// Search size-n triples for a type-3 instance and print the census.
    SearchType3(SearchArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file with exactly three permutations.
    file: PathBuf,
    /// Emit the full certificate document (the default mode).
    #[arg(long)]
    exact: bool,
    /// Decide whether the lower bound is attained; exit 0 = yes, 1 = no.
    #[arg(long, conflicts_with = "exact")]
    lb_check: bool,
    /// Decide whether a solution of value at most f exists; exit 0 = yes, 1 = no.
    #[arg(long, value_name = "f", conflicts_with_all = ["exact", "lb_check"])]
    budget: Option<usize>,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// Turn a graph into a three-permutation median instance.
    MisToMedian {
        /// Graph file: structured `swapmedian-graph v1` or bare "u v" edge lines.
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Pad a triple so all three pairwise distances become equal.
    Equalize {
        /// Instance file with exactly three permutations.
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Add isolated vertices so independence target k becomes k′ on the core.
    Pad {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        k_prime: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GeodesicsCommand {
    /// Print minimum-length swap sequences, one per line.
    Enumerate {
        /// Instance file with exactly two permutations.
        file: PathBuf,
        /// Most sequences to print.
        #[arg(long, default_value_t = 100)]
        limit: usize,
    },
    /// Print the number of minimum-length swap sequences.
    Count {
        /// Instance file with exactly two permutations.
        file: PathBuf,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// One of the named checks; see `verify --help` for the list.
    #[arg(value_parser = check_id_parser)]
    check_id: String,
    /// Largest permutation size random drivers draw.
    #[arg(long, visible_alias = "n", default_value_t = 8)]
    max_n: usize,
    /// Largest source-graph order catalog drivers sweep.
    #[arg(long, default_value_t = 6)]
    max_vertices: usize,
    /// Number of random trials (per-check default when omitted).
    #[arg(long)]
    trials: Option<usize>,
    /// RNG seed; checks that sample refuse to run without one.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Args)]
struct SearchArgs {
    /// Permutation size to search.
    #[arg(long)]
    n: usize,
    /// Number of sampled triples when n is too large to exhaust.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// RNG seed; required when sampling.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Args)]
struct LimitArgs {
    /// Largest size solved by exhaustive scan.
    #[arg(long, default_value_t = SolverConfig::default().exhaustive_limit)]
    exhaustive_limit: usize,
    /// Largest size solved by branch and bound.
    #[arg(long, default_value_t = SolverConfig::default().branch_limit)]
    branch_limit: usize,
    /// Largest swap set for exact independence pruning.
    #[arg(long, default_value_t = SolverConfig::default().mis_prune_limit)]
    mis_prune_limit: usize,
}

impl LimitArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            exhaustive_limit: self.exhaustive_limit,
            branch_limit: self.branch_limit,
            mis_prune_limit: self.mis_prune_limit,
        }
    }
}

fn check_id_parser(s: &str) -> Result<String, String> {
    if CHECK_IDS.contains(&s) {
        Ok(s.to_string())
    } else {
        Err(format!("unknown check id; expected one of: {}", CHECK_IDS.join(", ")))
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Dist { file, cycles } => cmd_dist(&file, cycles),
        Command::Median(args) => cmd_median(&args),
        Command::Closest(args) => cmd_closest(&args),
        Command::Reduce(cmd) => cmd_reduce(cmd),
        Command::Geodesics(cmd) => cmd_geodesics(cmd),
        Command::Verify(args) => cmd_verify(&args),
        Command::SearchType3(args) => cmd_search_type3(&args),
    }
}

fn load_document(path: &Path) -> Result<InstanceDocument> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    InstanceDocument::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_triple(path: &Path) -> Result<MedianInstance> {
    let doc = load_document(path)?;
    Ok(doc.triple()?)
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_dist(file: &Path, cycles: bool) -> Result<ExitCode> {
    let doc = load_document(file)?;
    if doc.permutations.len() < 2 {
        bail!("dist needs at least 2 permutations, found {}", doc.permutations.len());
    }
    for p in &doc.permutations {
        let row: Vec<String> = doc
            .permutations
            .iter()
            .map(|q| p.distance_to(q).map(|d| d.to_string()))
            .collect::<Result<_, _>>()?;
        println!("{}", row.join(" "));
    }
    if cycles {
        for (i, p) in doc.permutations.iter().enumerate() {
            println!("p{}: {}", i + 1, p.cycles());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_median(args: &SolveArgs) -> Result<ExitCode> {
    let t = load_triple(&args.file)?;
    let cfg = args.limits.config();
    if let Some(budget) = args.budget {
        let cert = exact_median(&t, &cfg)?;
        let yes = cert.value <= budget;
        println!("median value {} budget {budget} -> {}", cert.value, if yes { "yes" } else { "no" });
        return Ok(decision(yes));
    }
    if args.lb_check {
        let bound = median_lower_bound(&t);
        return Ok(match lb_achievability_median(&t, &cfg)? {
            LbAchievability::Achievable(seq) => {
                println!("lower bound {bound} achievable via {}", swaps_text(&seq));
                decision(true)
            }
            LbAchievability::Blocked | LbAchievability::ParityBlocked => {
                println!("lower bound {bound} not achievable");
                decision(false)
            }
        });
    }
    let cert = exact_median(&t, &cfg)?;
    let mut doc = InstanceDocument::new(vec![cert.sigma.clone()])?
        .with_metadata("command", "median --exact")
        .with_metadata("value", cert.value)
        .with_metadata(
            "distances",
            format!("{} {} {}", cert.distances[0], cert.distances[1], cert.distances[2]),
        );
    if let Some(seq) = &cert.swaps_from_p1 {
        doc = doc.with_metadata("swaps-from-p1", swaps_text(seq));
    }
    print!("{}", doc.to_text());
    Ok(ExitCode::SUCCESS)
}

fn cmd_closest(args: &SolveArgs) -> Result<ExitCode> {
    let t = load_triple(&args.file)?;
    let cfg = args.limits.config();
    if let Some(budget) = args.budget {
        let cert = exact_closest(&t, &cfg)?;
        let yes = cert.radius <= budget;
        println!("closest radius {} budget {budget} -> {}", cert.radius, if yes { "yes" } else { "no" });
        return Ok(decision(yes));
    }
    if args.lb_check {
        let bound = closest_lower_bound(&t);
        let cert = exact_closest(&t, &cfg)?;
        let yes = cert.radius == bound;
        println!(
            "lower bound {bound} {} (radius {})",
            if yes { "attained" } else { "not attained" },
            cert.radius
        );
        return Ok(decision(yes));
    }
    let cert = exact_closest(&t, &cfg)?;
    let doc = InstanceDocument::new(vec![cert.sigma.clone()])?
        .with_metadata("command", "closest --exact")
        .with_metadata("radius", cert.radius)
        .with_metadata(
            "distances",
            format!("{} {} {}", cert.distances[0], cert.distances[1], cert.distances[2]),
        );
    print!("{}", doc.to_text());
    Ok(ExitCode::SUCCESS)
}

fn swaps_text(seq: &[swapmedian::perm::SwapOp]) -> String {
    if seq.is_empty() {
        return "(empty)".to_string();
    }
    seq.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

fn decision(yes: bool) -> ExitCode {
    if yes {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_reduce(cmd: ReduceCommand) -> Result<ExitCode> {
    match cmd {
        ReduceCommand::MisToMedian { graph, output } => {
            let text = fs::read_to_string(&graph)
                .with_context(|| format!("reading {}", graph.display()))?;
            let (g, _) = parse_graph(&text)?;
            let inst = reduction_instance(&g)?;
            let edges: Vec<String> = g.edges().map(|(u, v)| format!("{u}-{v}")).collect();
            let mut doc = InstanceDocument::new(vec![
                inst.triple.p1().clone(),
                inst.triple.p2().clone(),
                inst.triple.p3().clone(),
            ])?
            .with_metadata("command", "reduce mis-to-median")
            .with_metadata("source-vertices", g.vertex_count())
            .with_metadata(
                "source-edges",
                if edges.is_empty() { "-".to_string() } else { edges.join(",") },
            );
            if let Some(target) = inst.mis_target {
                doc = doc.with_metadata("mis-target", target);
            }
            emit(output.as_ref(), &doc.to_text())?;
        }
        ReduceCommand::Equalize { file, output } => {
            let t = load_triple(&file)?;
            let eq = equalize_distances(&t)?;
            let doc = InstanceDocument::new(vec![
                eq.triple.p1().clone(),
                eq.triple.p2().clone(),
                eq.triple.p3().clone(),
            ])?
            .with_metadata("command", "reduce equalize")
            .with_metadata("original-size", eq.original_size)
            .with_metadata("common-distance", eq.common_distance);
            emit(output.as_ref(), &doc.to_text())?;
        }
        ReduceCommand::Pad { graph, k, k_prime, output } => {
            let text = fs::read_to_string(&graph)
                .with_context(|| format!("reading {}", graph.display()))?;
            let (g, _) = parse_graph(&text)?;
            let padded = pad_graph(&g, k, k_prime)?;
            let mut meta = std::collections::BTreeMap::new();
            meta.insert("command".to_string(), "reduce pad".to_string());
            meta.insert("k".to_string(), k.to_string());
            meta.insert("k-prime".to_string(), k_prime.to_string());
            meta.insert("source-vertices".to_string(), g.vertex_count().to_string());
            emit(output.as_ref(), &graph_to_text(&padded, &meta))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_geodesics(cmd: GeodesicsCommand) -> Result<ExitCode> {
    match cmd {
        GeodesicsCommand::Enumerate { file, limit } => {
            let (u, v) = load_document(&file)?.pair()?;
            let enumeration = enumerate_geodesics(&u, &v, limit)?;
            for seq in &enumeration.sequences {
                println!("{}", swaps_text(seq));
            }
            if enumeration.truncated {
                println!("# truncated at {limit}");
            }
        }
        GeodesicsCommand::Count { file } => {
            let (u, v) = load_document(&file)?.pair()?;
            println!("{}", count_geodesics(&u, &v)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let scope = VerifyScope {
        max_n: args.max_n,
        max_vertices: args.max_vertices,
        trials: args.trials,
        seed: args.seed,
        solver: args.limits.config(),
    };
    let reports = run_check(&args.check_id, &scope)?;
    Ok(print_reports(&reports))
}

fn cmd_search_type3(args: &SearchArgs) -> Result<ExitCode> {
    let scope = VerifyScope {
        seed: args.seed,
        solver: args.limits.config(),
        ..VerifyScope::default()
    };
    let reports = search_type3(args.n, args.samples, &scope)?;
    Ok(print_reports(&reports))
}

fn print_reports(reports: &[VerificationReport]) -> ExitCode {
    let mut any_fail = false;
    for report in reports {
        println!("{}", report.to_json_line());
        any_fail |= report.verdict == Verdict::Fail;
    }
    decision(!any_fail)
}

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use botohe::colony::{run_optimization, ColonyConfig};
use botohe::eval::{evaluate_plan, survivor_pmf};
use botohe::formats::{archive_docs, archive_to_json, plan_from_json, ArchiveEntryDoc};
use botohe::oracle::mc_estimate_objectives;
use botohe::{build_museum_instance, load_instance, Execution, ProblemInstance};

/// Pareto-optimal team trail plans for robots in hazardous environments.
#[derive(Parser)]
#[command(name = "botohe", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for the Pareto front of team plans.
    Solve(SolveArgs),
    /// Compare the full colony with heuristic-free and pheromone-free runs.
    Ablate(AblateArgs),
    /// Check a plan's analytic objectives against Monte-Carlo missions.
    Verify(VerifyArgs),
    /// Write the museum-like example instance.
    GenMuseum(GenMuseumArgs),
}

#[derive(Args)]
struct SearchArgs {
    /// Instance file (JSON).
    #[arg(long)]
    instance: PathBuf,
    /// Output directory.
    #[arg(long, default_value = "./out")]
    out: PathBuf,
    #[arg(long, default_value_t = 100)]
    ants: usize,
    /// Pheromone evaporation rate.
    #[arg(long, default_value_t = 0.04)]
    rho: f64,
    /// Iterations (10000 matches a full-scale run; 1000 is enough for a quick look).
    #[arg(long, default_value_t = 10_000)]
    iters: usize,
    /// Floor added to both heuristics.
    #[arg(long, default_value_t = 1e-6)]
    epsilon: f64,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    search: SearchArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Replace both heuristics with 1.
    #[arg(long)]
    no_heuristic: bool,
    /// Hold both pheromone species at 1.
    #[arg(long)]
    no_pheromone: bool,
    /// Also write the final pheromone field to pheromone.csv.
    #[arg(long)]
    dump_pheromone: bool,
}

#[derive(Args)]
struct AblateArgs {
    #[command(flatten)]
    search: SearchArgs,
    /// Comma-separated seeds, e.g. 1,2,3.
    #[arg(long)]
    seeds: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Team plan file: an array of trails, each an array of node ids.
    #[arg(long)]
    plan: PathBuf,
    #[arg(long, default_value_t = 1_000_000)]
    mc_samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct GenMuseumArgs {
    /// Output file.
    #[arg(long, default_value = "./out/museum.json")]
    out: PathBuf,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunReport {
    config: ColonyConfig,
    instance_path: String,
    instance_digest: String,
    archive: Vec<ArchiveEntryDoc>,
    progress_trace: String,
    final_area_indicator: f64,
    wall_clock_seconds: f64,
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    configure_threads()?;
    match cli.command {
        Command::Solve(a) => solve(a),
        Command::Ablate(a) => ablate(a),
        Command::Verify(a) => verify(a),
        Command::GenMuseum(a) => gen_museum(a),
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("BOTOHE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .with_context(|| format!("BOTOHE_THREADS must be a positive integer, got {raw:?}"))?;
    ensure!(n >= 1, "BOTOHE_THREADS must be at least 1");
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("configuring worker threads")?;
    Ok(())
}

fn read_instance(path: &Path) -> Result<ProblemInstance> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    load_instance(&bytes).with_context(|| format!("loading {}", path.display()))
}

fn write(path: &Path, contents: impl AsRef<[u8]>) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn config(
    search: &SearchArgs,
    seed: u64,
    no_heuristic: bool,
    no_pheromone: bool,
) -> Result<ColonyConfig> {
    let cfg = ColonyConfig {
        num_ants: search.ants,
        evaporation_rate: search.rho,
        iterations: search.iters,
        epsilon: search.epsilon,
        master_seed: seed,
        ablate_heuristic: no_heuristic,
        ablate_pheromone: no_pheromone,
        execution: Execution::Parallel,
        ..ColonyConfig::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

fn solve(args: SolveArgs) -> Result<()> {
    let inst = read_instance(&args.search.instance)?;
    let cfg = config(
        &args.search,
        args.seed,
        args.no_heuristic,
        args.no_pheromone,
    )?;
    let out = &args.search.out;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;

    let started = Instant::now();
    let run = run_optimization(&inst, &cfg)?;
    let elapsed = started.elapsed().as_secs_f64();

    let progress = out.join("progress.csv");
    write(
        &out.join("pareto.json"),
        archive_to_json(&inst, &run.archive),
    )?;
    write(&progress, run.trace.to_csv())?;
    if args.dump_pheromone {
        write(&out.join("pheromone.csv"), run.pheromone.to_csv(&inst))?;
    }
    let report = RunReport {
        config: cfg,
        instance_path: args.search.instance.display().to_string(),
        instance_digest: inst.digest(),
        archive: archive_docs(&inst, &run.archive),
        progress_trace: progress.display().to_string(),
        final_area_indicator: run.archive.area(),
        wall_clock_seconds: elapsed,
    };
    write(
        &out.join("report.json"),
        serde_json::to_string_pretty(&report)?,
    )?;

    println!("archive size: {}", run.archive.len());
    println!("area indicator: {}", run.archive.area());
    Ok(())
}

const ABLATIONS: [(&str, bool, bool); 3] = [
    ("full", false, false),
    ("no-heuristic", true, false),
    ("no-pheromone", false, true),
];

fn parse_seeds(raw: &str) -> Result<Vec<u64>> {
    let seeds = raw
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u64>().with_context(|| format!("bad seed {s:?}")))
        .collect::<Result<Vec<_>>>()?;
    if seeds.is_empty() {
        bail!("--seeds needs at least one seed, e.g. --seeds 1,2,3");
    }
    Ok(seeds)
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

fn ablate(args: AblateArgs) -> Result<()> {
    let seeds = parse_seeds(&args.seeds)?;
    let inst = read_instance(&args.search.instance)?;
    let out = &args.search.out;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;

    let mut summary = String::from("config,seed,final_area_indicator,archive_size\n");
    for (name, no_heuristic, no_pheromone) in ABLATIONS {
        let mut finals = Vec::with_capacity(seeds.len());
        for &seed in &seeds {
            let cfg = config(&args.search, seed, no_heuristic, no_pheromone)?;
            let run = run_optimization(&inst, &cfg)?;
            write(
                &out.join(format!("progress_{name}_seed{seed}.csv")),
                run.trace.to_csv(),
            )?;
            let area = run.archive.area();
            summary.push_str(&format!("{name},{seed},{area},{}\n", run.archive.len()));
            finals.push(area);
        }
        println!(
            "{name:>13}: median final area indicator {}",
            median(&mut finals)
        );
    }
    write(&out.join("summary.csv"), summary)?;
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<()> {
    ensure!(args.mc_samples >= 1, "--mc-samples must be at least 1");
    let inst = read_instance(&args.instance)?;
    let bytes = fs::read(&args.plan).with_context(|| format!("reading {}", args.plan.display()))?;
    let plan = plan_from_json(&inst, &bytes)
        .with_context(|| format!("loading {}", args.plan.display()))?;

    let exact = evaluate_plan(&inst, &plan);
    let mc = mc_estimate_objectives(
        &inst,
        &plan,
        args.mc_samples,
        args.seed,
        Execution::Parallel,
    );
    let pmf = survivor_pmf(&inst, &plan);

    println!(
        "analytic:    expected_reward = {:.6}  expected_survivors = {:.6}",
        exact.expected_reward, exact.expected_survivors
    );
    println!(
        "monte-carlo: expected_reward = {:.6} ± {:.6}  expected_survivors = {:.6} ± {:.6}  ({} missions)",
        mc.mean_reward, mc.se_reward, mc.mean_survivors, mc.se_survivors, mc.samples
    );
    println!("survivor pmf:");
    for (s, p) in pmf.iter().enumerate() {
        println!("  P[S = {s}] = {p:.6}");
    }
    let agrees = |analytic: f64, mean: f64, se: f64| (analytic - mean).abs() <= 3.0 * se + 1e-9;
    let pass = agrees(exact.expected_reward, mc.mean_reward, mc.se_reward)
        && agrees(exact.expected_survivors, mc.mean_survivors, mc.se_survivors);
    println!("verdict: {}", if pass { "PASS" } else { "FAIL" });
    ensure!(
        pass,
        "Monte-Carlo estimate disagrees with the analytic objectives beyond 3 standard errors"
    );
    Ok(())
}

fn gen_museum(args: GenMuseumArgs) -> Result<()> {
    if let Some(dir) = args.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let museum = build_museum_instance();
    write(&args.out, museum.to_json_pretty() + "\n")?;
    println!(
        "wrote {} ({} nodes, {} arcs)",
        args.out.display(),
        museum.num_nodes(),
        museum.num_arcs()
    );
    Ok(())
}

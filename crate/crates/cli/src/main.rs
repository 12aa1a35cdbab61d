//! Command-line front end for the graph-indices library: graph generation,
//! index computation, closed-form oracles, density-matched parameter
//! selection, and Monte Carlo experiments.
//!
//! All errors print to standard error as a single line prefixed `error:`
//! and exit nonzero; exit code 0 means the requested computation completed.
//! Output files are written atomically (temp file in the target directory,
//! then rename). The environment variable `GRAPH_INDEX_THREADS` caps the
//! worker count (default: available parallelism).

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use graph_indices::generators::{
    ba_m_for_density, barabasi_albert, clique_plus_triangles, clique_union_null,
    disjoint_polygons, erdos_renyi, random_regular, rr_d_for_density, two_phase_clique_null,
    watts_strogatz, ws_k_for_density, Seed,
};
use graph_indices::graph::Graph;
use graph_indices::indices::{clustering_index, degree_index, Alpha};
use graph_indices::montecarlo::{format_real, run_experiment, write_csv, ExperimentConfig};
use graph_indices::oracles::{
    brute_force_er_expectation, ci2_empirical_limit, expected_ci1_two_phase, expected_di1_er,
    expected_di1_upper_bound, expected_di2_er, expected_local_clustering_er,
    mean_abs_diff_binomial, mean_abs_diff_binomial_asymptotic, mean_abs_diff_binomial_half,
    BinomialParams,
};
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "graph-indices", version, about = "Degree and clustering indices of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a model and write it as an edge-list file.
    Generate(GenerateArgs),
    /// Report indices and clustering statistics of an edge-list file.
    Stats(StatsArgs),
    /// Evaluate a closed-form expectation.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Match a model parameter to an edge-density target.
    Params(ParamsArgs),
    /// Run a Monte Carlo experiment from a config file and write a CSV.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Model: er, ws, ba, rr, two-phase, polygons, clique-triangles,
    /// clique-null.
    #[arg(long)]
    model: String,
    /// Node count (er, ws, ba, rr, two-phase, clique-triangles).
    #[arg(long)]
    n: Option<usize>,
    /// Edge probability (er) or null-set probability (two-phase).
    #[arg(long)]
    p: Option<f64>,
    /// Ring-lattice neighbor count (ws).
    #[arg(long)]
    k: Option<usize>,
    /// Rewiring probability (ws).
    #[arg(long)]
    beta: Option<f64>,
    /// Edges per new node (ba) or clique size (clique-null).
    #[arg(long)]
    m: Option<usize>,
    /// Common degree (rr).
    #[arg(long)]
    d: Option<usize>,
    /// Comma-separated polygon sizes (polygons).
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Random seed for the stochastic models.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output edge-list path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct StatsArgs {
    /// Input edge-list path.
    #[arg(long = "in")]
    input: PathBuf,
    /// Index exponents to report (repeatable or comma-separated).
    #[arg(long = "alpha", value_delimiter = ',', default_values_t = [1.0, 2.0])]
    alpha: Vec<f64>,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Expected DI_2 of G(n, p): 6 C(n,3) p (1-p).
    Edi2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    /// Expected DI_1 of G(n, p): C(n,2) E|Bin(n-2,p) - Bin(n-2,p)|.
    Edi1 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    /// Upper bound on expected DI_1: C(n,2) 2 sqrt((n-2) p (1-p)).
    Edi1Upper {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    /// E|X-Y| for independent X, Y ~ Bin(m, p) (exact double sum).
    MadBinomial {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: f64,
    },
    /// E|X-Y| at p = 1/2: m C(2m, m) / 2^(2m), exact big-integer form.
    MadBinomialHalf {
        #[arg(long)]
        m: usize,
    },
    /// Asymptotic E|X-Y|: 2 sqrt(m p (1-p) / pi).
    MadBinomialAsym {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: f64,
    },
    /// Expected local clustering coefficient of G(n, p).
    ElccEr {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    /// Large-n empirical reference value for CI_2 of G(n, p).
    Ci2Limit {
        #[arg(long)]
        p: f64,
    },
    /// Expected CI_1 of the two-phase clique/null model: (n^2-n) p (1-p).
    Eci1TwoPhase {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    /// Exact E[statistic] over all labeled graphs on n <= 6 nodes.
    BruteEr {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        /// One of: di1, di2, ci1, ci2, c0 (clustering of node 0).
        #[arg(long)]
        statistic: String,
    },
}

#[derive(Args)]
struct ParamsArgs {
    /// Model: ws, ba, or rr.
    #[arg(long)]
    model: String,
    /// Node count.
    #[arg(long)]
    n: usize,
    /// Edge-density target in (0, 1).
    #[arg(long)]
    p_star: f64,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Experiment config file (line-oriented `key = value`).
    #[arg(long)]
    config: PathBuf,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

fn main() {
    let code = match run() {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err:#}");
            1
        }
    };
    std::process::exit(code);
}

fn run() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    configure_threads()?;
    match Cli::parse().command {
        Command::Generate(args) => cmd_generate(args),
        Command::Stats(args) => cmd_stats(args),
        Command::Oracle(oracle) => cmd_oracle(oracle),
        Command::Params(args) => cmd_params(args),
        Command::Experiment(args) => cmd_experiment(args),
    }
}

/// Applies the `GRAPH_INDEX_THREADS` cap to the global worker pool.
fn configure_threads() -> Result<()> {
    match std::env::var("GRAPH_INDEX_THREADS") {
        Ok(raw) => {
            let threads: usize = raw
                .parse()
                .ok()
                .filter(|&t| t >= 1)
                .with_context(|| {
                    format!("GRAPH_INDEX_THREADS must be a positive integer, got `{raw}`")
                })?;
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global()
                .context("cannot configure the worker pool")?;
            Ok(())
        }
        Err(std::env::VarError::NotPresent) => Ok(()),
        Err(err) => Err(err).context("GRAPH_INDEX_THREADS is not valid unicode"),
    }
}

/// Writes a file atomically: contents go to a temporary file in the target
/// directory, which is renamed over the destination only on success.
fn write_atomic<F>(path: &Path, write_contents: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    let dir = match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot create a temporary file in {}", dir.display()))?;
    {
        let mut buffered = io::BufWriter::new(tmp.as_file_mut());
        write_contents(&mut buffered)?;
        buffered.flush().context("cannot flush output")?;
    }
    tmp.persist(path)
        .with_context(|| format!("cannot move output into place at {}", path.display()))?;
    Ok(())
}

fn require<T>(value: Option<T>, flag: &str, model: &str) -> Result<T> {
    value.ok_or_else(|| anyhow!("{flag} is required for model {model}"))
}

fn cmd_generate(args: GenerateArgs) -> Result<()> {
    let seed = Seed(args.seed);
    let graph = match args.model.as_str() {
        "er" => {
            let n = require(args.n, "--n", "er")?;
            let p = require(args.p, "--p", "er")?;
            erdos_renyi(n, p, seed)?
        }
        "ws" => {
            let n = require(args.n, "--n", "ws")?;
            let k = require(args.k, "--k", "ws")?;
            let beta = require(args.beta, "--beta", "ws")?;
            watts_strogatz(n, k, beta, seed)?
        }
        "ba" => {
            let n = require(args.n, "--n", "ba")?;
            let m = require(args.m, "--m", "ba")?;
            barabasi_albert(n, m, seed)?
        }
        "rr" => {
            let n = require(args.n, "--n", "rr")?;
            let d = require(args.d, "--d", "rr")?;
            random_regular(n, d, seed)?
        }
        "two-phase" => {
            let n = require(args.n, "--n", "two-phase")?;
            let p = require(args.p, "--p", "two-phase")?;
            two_phase_clique_null(n, p, seed)?
        }
        "polygons" => {
            let sizes = require(args.sizes, "--sizes", "polygons")?;
            disjoint_polygons(&sizes)?
        }
        "clique-triangles" => {
            let n = require(args.n, "--n", "clique-triangles")?;
            clique_plus_triangles(n)?
        }
        "clique-null" => {
            let m = require(args.m, "--m", "clique-null")?;
            clique_union_null(m)?
        }
        other => bail!(
            "unknown model `{other}` for --model (expected er, ws, ba, rr, two-phase, \
             polygons, clique-triangles, clique-null)"
        ),
    };
    write_atomic(&args.out, |w| {
        graph
            .write_edge_list(w)
            .with_context(|| format!("cannot write edge list to {}", args.out.display()))
    })?;
    println!("n = {}", graph.node_count());
    println!("m = {}", graph.edge_count());
    if graph.node_count() >= 2 {
        println!("density = {}", format_real(graph.edge_density()?));
    }
    Ok(())
}

fn cmd_stats(args: StatsArgs) -> Result<()> {
    let file = File::open(&args.input)
        .with_context(|| format!("cannot open {}", args.input.display()))?;
    let graph = Graph::read_edge_list(BufReader::new(file))
        .with_context(|| format!("cannot parse {}", args.input.display()))?;
    println!("n = {}", graph.node_count());
    println!("m = {}", graph.edge_count());
    println!("density = {}", format_real(graph.edge_density()?));
    for &alpha in &args.alpha {
        let alpha_checked = Alpha::new(alpha)?;
        println!(
            "DI[alpha={alpha}] = {}",
            format_real(degree_index(&graph, alpha_checked)?)
        );
        println!(
            "CI[alpha={alpha}] = {}",
            format_real(clustering_index(&graph, alpha_checked)?)
        );
    }
    let coefficients = graph.local_clusterings();
    let min = coefficients.iter().copied().fold(f64::INFINITY, f64::min);
    let max = coefficients.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = coefficients.iter().sum::<f64>() / coefficients.len() as f64;
    println!("local_clustering_min = {}", format_real(min));
    println!("local_clustering_max = {}", format_real(max));
    println!("local_clustering_mean = {}", format_real(mean));
    Ok(())
}

fn cmd_oracle(oracle: OracleCommand) -> Result<()> {
    let value = match oracle {
        OracleCommand::Edi2 { n, p } => expected_di2_er(n, p)?,
        OracleCommand::Edi1 { n, p } => expected_di1_er(n, p)?,
        OracleCommand::Edi1Upper { n, p } => expected_di1_upper_bound(n, p)?,
        OracleCommand::MadBinomial { m, p } => mean_abs_diff_binomial(BinomialParams::new(m, p)?),
        OracleCommand::MadBinomialHalf { m } => mean_abs_diff_binomial_half(m),
        OracleCommand::MadBinomialAsym { m, p } => {
            mean_abs_diff_binomial_asymptotic(BinomialParams::new(m, p)?)?
        }
        OracleCommand::ElccEr { n, p } => expected_local_clustering_er(n, p)?,
        OracleCommand::Ci2Limit { p } => ci2_empirical_limit(p)?,
        OracleCommand::Eci1TwoPhase { n, p } => expected_ci1_two_phase(n, p)?,
        OracleCommand::BruteEr { n, p, statistic } => {
            let stat: fn(&Graph) -> f64 = match statistic.as_str() {
                "di1" => |g| degree_index(g, Alpha::ONE).expect("n >= 2 enforced"),
                "di2" => |g| degree_index(g, Alpha::TWO).expect("n >= 2 enforced"),
                "ci1" => |g| clustering_index(g, Alpha::ONE).expect("n >= 2 enforced"),
                "ci2" => |g| clustering_index(g, Alpha::TWO).expect("n >= 2 enforced"),
                "c0" => |g| g.local_clustering(0).expect("node 0 exists"),
                other => bail!(
                    "unknown statistic `{other}` for --statistic (expected di1, di2, ci1, ci2, c0)"
                ),
            };
            brute_force_er_expectation(n, p, stat)?.value
        }
    };
    println!("{}", format_real(value));
    Ok(())
}

fn cmd_params(args: ParamsArgs) -> Result<()> {
    let value = match args.model.as_str() {
        "ws" => ws_k_for_density(args.n, args.p_star)?,
        "ba" => ba_m_for_density(args.n, args.p_star)?,
        "rr" => rr_d_for_density(args.n, args.p_star)?,
        other => bail!("unknown model `{other}` for --model (expected ws, ba, rr)"),
    };
    println!("{value}");
    Ok(())
}

fn cmd_experiment(args: ExperimentArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.config)
        .with_context(|| format!("cannot read {}", args.config.display()))?;
    let config = ExperimentConfig::parse(&text)
        .with_context(|| format!("invalid config {}", args.config.display()))?;
    let rows = run_experiment(&config)?;
    write_atomic(&args.out, |w| Ok(write_csv(&rows, w)?))?;
    log::info!("wrote {} rows to {}", rows.len(), args.out.display());
    Ok(())
}

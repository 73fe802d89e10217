use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use subspace_round::error::Error;
use subspace_round::graph;
use subspace_round::io;
use subspace_round::partitions::delta_partitions;
use subspace_round::report::ClusteringReport;
use subspace_round::spectral;
use subspace_round::synth::{self, IntraSpec};
use subspace_round::verify::{run_suite, Suite};

/// Subspace rounding: generate planted instances, cluster them, and verify
/// the documented invariants.
#[derive(Parser)]
#[command(name = "subspace-round", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a planted fixture (embedding or graph) plus its ground truth.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Cluster a fixture and write a JSON report.
    Cluster(ClusterArgs),
    /// Run a property suite; exits non-zero iff a property fails.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Planted embedding with a measured perturbation level.
    Embedding {
        /// Cluster sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Number of points (defaults to the sum of sizes).
        #[arg(long)]
        n: Option<usize>,
        /// Target perturbation level in [0, 1).
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path stem; writes <out>.embedding.json and <out>.truth.json.
        #[arg(long)]
        out: PathBuf,
    },
    /// Planted graph: per-cluster blocks plus sampled cross edges.
    Graph {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Total cross-edge weight.
        #[arg(long, default_value_t = 0.0)]
        cross: f64,
        /// Intra-cluster wiring: "clique" or "expander:<d>".
        #[arg(long, default_value = "clique")]
        intra: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path stem; writes <out>.graph and <out>.truth.json.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct ClusterArgs {
    /// Fixture path (embedding/matrix JSON or graph edge list).
    input: PathBuf,
    #[arg(long, value_enum)]
    mode: Mode,
    /// Number of clusters; defaults to the embedding dimension in embedding
    /// mode and is required otherwise.
    #[arg(long)]
    k: Option<usize>,
    /// Ground-truth partition JSON for closeness scoring.
    #[arg(long)]
    truth: Option<PathBuf>,
    /// Where to write the JSON report (stdout when absent).
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Embedding,
    Graph,
    Matrix,
}

#[derive(Args)]
struct VerifyArgs {
    /// linalg | similarity | round | unravel | pipeline | graph
    suite: String,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Perturbation levels for the pipeline sweep.
    #[arg(long, value_delimiter = ',')]
    eps_sweep: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also write the suite report to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Csv,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("SUBSPACE_ROUND_THREADS") {
        if let Ok(count) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(count.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Generate { kind } => {
            generate(kind)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Cluster(args) => {
            let report = cluster(&args)?;
            let json = serde_json::to_string_pretty(&report)?;
            match &args.report {
                Some(path) => std::fs::write(path, json + "\n")?,
                None => println!("{json}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => verify(&args),
    }
}

fn generate(kind: GenerateKind) -> Result<(), Error> {
    match kind {
        GenerateKind::Embedding {
            sizes,
            n,
            eps,
            seed,
            out,
        } => {
            let n = n.unwrap_or_else(|| sizes.iter().sum());
            let total: usize = sizes.iter().sum();
            if sizes.contains(&0) || total > n {
                return Err(Error::Numeric(format!(
                    "--sizes must be positive and sum to at most --n (got sum {total}, n {n})"
                )));
            }
            if !(0.0..1.0).contains(&eps) {
                return Err(Error::Numeric(format!(
                    "--eps must lie in [0, 1), got {eps}"
                )));
            }
            let (y, truth, eps_actual) = synth::planted_embedding(n, &sizes, eps, seed)?;
            let fixture = io::EmbeddingFixture::from_embedding(&y, Some(eps_actual), Some(seed));
            io::write_json(&with_suffix(&out, "embedding.json"), &fixture)?;
            io::write_json(&with_suffix(&out, "truth.json"), &truth)?;
            println!(
                "embedding fixture: n={n}, k={}, eps_actual={eps_actual:.3e}, seed={seed}",
                truth.k()
            );
            Ok(())
        }
        GenerateKind::Graph {
            sizes,
            cross,
            intra,
            seed,
            out,
        } => {
            let spec = parse_intra(&intra)?;
            let (g, truth) = synth::planted_graph(&sizes, spec, cross, seed)?;
            io::write_graph(&with_suffix(&out, "graph"), &g)?;
            io::write_json(&with_suffix(&out, "truth.json"), &truth)?;
            let phi = graph::max_expansion(&g, &truth)?;
            println!(
                "graph fixture: n={}, k={}, edges={}, plant max expansion={phi:.4e}, seed={seed}",
                g.n(),
                truth.k(),
                g.edges().len()
            );
            Ok(())
        }
    }
}

fn parse_intra(text: &str) -> Result<IntraSpec, Error> {
    if text == "clique" {
        return Ok(IntraSpec::NormalizedClique);
    }
    if let Some(d) = text.strip_prefix("expander:") {
        let degree: usize = d
            .parse()
            .map_err(|_| Error::Numeric(format!("invalid expander degree `{d}`")))?;
        return Ok(IntraSpec::Expander { degree });
    }
    Err(Error::Numeric(format!(
        "unknown --intra value `{text}` (expected `clique` or `expander:<d>`)"
    )))
}

fn with_suffix(stem: &std::path::Path, suffix: &str) -> PathBuf {
    let mut name = stem.file_name().unwrap_or_default().to_os_string();
    name.push(".");
    name.push(suffix);
    stem.with_file_name(name)
}

fn cluster(args: &ClusterArgs) -> Result<ClusteringReport, Error> {
    let truth = args
        .truth
        .as_ref()
        .map(|p| io::read_partition(p))
        .transpose()?;
    let start = Instant::now();
    let mut params: BTreeMap<String, serde_json::Value> = BTreeMap::new();
    params.insert(
        "power_tol".into(),
        serde_json::json!(subspace_round::linalg::DEFAULT_POWER_TOL),
    );
    params.insert(
        "rank_tol".into(),
        serde_json::json!(subspace_round::linalg::DEFAULT_RANK_TOL),
    );

    let (partition, k, n, residual, lambda_k1, per_cluster_expansion) = match args.mode {
        Mode::Embedding => {
            params.insert("mode".into(), serde_json::json!("embedding"));
            let fixture: io::EmbeddingFixture = io::read_json(&args.input)?;
            let y = fixture.into_embedding()?;
            if let Some(k) = args.k {
                if k != y.k() {
                    return Err(Error::Numeric(format!(
                        "--k {k} does not match the embedding dimension {}",
                        y.k()
                    )));
                }
            }
            let partition = spectral::spectral_clustering(&y)?;
            let residual = spectral::residual(&y, &partition);
            (partition, y.k(), y.n(), residual, None, None)
        }
        Mode::Graph => {
            params.insert("mode".into(), serde_json::json!("graph"));
            let g = io::read_graph(&args.input)?;
            let k = args
                .k
                .ok_or_else(|| Error::Numeric("--k is required in graph mode".into()))?;
            let (partition, stats) = graph::cluster_graph(&g, k)?;
            (
                partition,
                k,
                g.n(),
                stats.residual,
                stats.lambda_k1,
                Some(stats.per_cluster_expansion),
            )
        }
        Mode::Matrix => {
            params.insert("mode".into(), serde_json::json!("matrix"));
            let fixture: io::MatrixFixture = io::read_json(&args.input)?;
            let x = fixture.into_matrix()?;
            let k = args
                .k
                .ok_or_else(|| Error::Numeric("--k is required in matrix mode".into()))?;
            let partition = graph::approximate_matrix(&x, k)?;
            let matrix_residual = graph::projector_distance(&x, &partition);
            params.insert(
                "matrix_residual".into(),
                serde_json::json!(matrix_residual),
            );
            // Residual of the eigenvector embedding, matching the library
            // pipeline's objective.
            let decomposition =
                subspace_round::linalg::top_k_eigenpairs(&x, k, subspace_round::linalg::DEFAULT_POWER_TOL)?;
            let n = x.nrows();
            let mut rows = ndarray::Array2::zeros((k, n));
            for (i, v) in decomposition.vectors.iter().enumerate() {
                rows.row_mut(i).assign(v);
            }
            let y = spectral::Embedding::new(subspace_round::linalg::orthonormal_row_basis(
                &rows,
                subspace_round::linalg::DEFAULT_RANK_TOL,
            )?)?;
            let residual = spectral::residual(&y, &partition);
            (partition, k, n, residual, None, None)
        }
    };

    let delta_to_truth = match &truth {
        Some(t) if t.k() == partition.k() => {
            Some(delta_partitions(partition.sets(), t.sets())?.0)
        }
        Some(t) => {
            eprintln!(
                "warning: truth has {} sets but the output has {}; skipping closeness",
                t.k(),
                partition.k()
            );
            None
        }
        None => None,
    };

    Ok(ClusteringReport {
        k,
        n,
        delta_to_truth,
        residual,
        per_cluster_expansion,
        lambda_k1,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
        seed: args.seed,
        algorithm_parameters: params,
    })
}

fn verify(args: &VerifyArgs) -> Result<ExitCode, Error> {
    let suite: Suite = args
        .suite
        .parse()
        .map_err(|m: String| Error::Numeric(m))?;
    let report = run_suite(suite, args.seed, args.trials, &args.eps_sweep);
    for p in &report.properties {
        let status = if p.passed() { "pass" } else { "FAIL" };
        println!(
            "[{status}] {} ({} trials, {} failures, {} flagged)",
            p.name, p.trials, p.failures, p.flagged
        );
        if let Some(worst) = &p.worst {
            if !p.passed() {
                println!("        worst: {worst}");
            } else if p.flagged > 0 {
                println!("        note: {worst}");
            }
        }
    }
    let output = match args.format {
        Format::Json => serde_json::to_string_pretty(&report)?,
        Format::Csv => {
            let mut csv = String::from("suite,property,trials,failures,flagged,passed\n");
            for p in &report.properties {
                csv.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    report.suite,
                    p.name,
                    p.trials,
                    p.failures,
                    p.flagged,
                    p.passed()
                ));
            }
            csv
        }
    };
    if let Some(path) = &args.out {
        std::fs::write(path, output)?;
    } else if args.format == Format::Csv {
        print!("{output}");
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

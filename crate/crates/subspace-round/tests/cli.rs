//! End-to-end CLI checks: fixture generation, clustering reports, exit
//! codes, and parity between the CLI and the library on the same fixture.

use std::path::Path;
use std::process::Command;

use subspace_round::graph;
use subspace_round::io;
use subspace_round::report::ClusteringReport;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_subspace-round"))
}

fn run(args: &[&str]) -> std::process::Output {
    bin().args(args).output().expect("spawn subspace-round")
}

#[test]
fn generate_then_cluster_graph_with_library_parity() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("fix");
    let stem_s = stem.to_str().unwrap();

    let out = run(&[
        "generate", "graph", "--sizes", "40,20,10,2", "--cross", "0.5", "--seed", "7", "--out",
        stem_s,
    ]);
    assert!(out.status.success(), "{out:?}");

    let graph_path = dir.path().join("fix.graph");
    let truth_path = dir.path().join("fix.truth.json");
    assert!(graph_path.exists() && truth_path.exists());

    let report_path = dir.path().join("report.json");
    let out = run(&[
        "cluster",
        graph_path.to_str().unwrap(),
        "--mode",
        "graph",
        "--k",
        "4",
        "--truth",
        truth_path.to_str().unwrap(),
        "--report",
        report_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");

    let report: ClusteringReport =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report.k, 4);
    assert_eq!(report.n, 72);
    assert_eq!(report.delta_to_truth, Some(0.0));

    // Library-level call on the same fixture produces identical metrics.
    let g = io::read_graph(&graph_path).unwrap();
    let (_, stats) = graph::cluster_graph(&g, 4).unwrap();
    assert_eq!(report.residual, stats.residual);
    assert_eq!(report.lambda_k1, stats.lambda_k1);
    assert_eq!(
        report.per_cluster_expansion,
        Some(stats.per_cluster_expansion)
    );

    // Reports are deterministic given (fixture, parameters), runtime aside.
    let report2_path = dir.path().join("report2.json");
    let out = run(&[
        "cluster",
        graph_path.to_str().unwrap(),
        "--mode",
        "graph",
        "--k",
        "4",
        "--truth",
        truth_path.to_str().unwrap(),
        "--report",
        report2_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let report2: ClusteringReport =
        serde_json::from_str(&std::fs::read_to_string(&report2_path).unwrap()).unwrap();
    assert!(report.same_metrics(&report2));
}

#[test]
fn generate_exact_embedding_and_cluster() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("rank1");
    let out = run(&[
        "generate",
        "embedding",
        "--sizes",
        "3",
        "--eps",
        "0",
        "--n",
        "3",
        "--seed",
        "1",
        "--out",
        stem.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("eps_actual"), "{stdout}");

    let emb = dir.path().join("rank1.embedding.json");
    let truth = dir.path().join("rank1.truth.json");
    let out = run(&[
        "cluster",
        emb.to_str().unwrap(),
        "--mode",
        "embedding",
        "--truth",
        truth.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let report: ClusteringReport =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(report.delta_to_truth, Some(0.0));
    assert_eq!(report.k, 1);
}

#[test]
fn matrix_mode_on_exact_projector() {
    use subspace_round::partitions::{basis_matrix, NodeSet, Partition};

    let dir = tempfile::tempdir().unwrap();
    let truth = Partition::new(
        6,
        vec![NodeSet::new(vec![0, 1, 2]), NodeSet::new(vec![3, 4, 5])],
    )
    .unwrap();
    let b = basis_matrix(&truth);
    let x = b.dot(&b.t());
    let fixture = io::MatrixFixture::from_matrix(&x);
    let matrix_path = dir.path().join("proj.matrix.json");
    let truth_path = dir.path().join("proj.truth.json");
    io::write_json(&matrix_path, &fixture).unwrap();
    io::write_json(&truth_path, &truth).unwrap();

    let out = run(&[
        "cluster",
        matrix_path.to_str().unwrap(),
        "--mode",
        "matrix",
        "--k",
        "2",
        "--truth",
        truth_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let report: ClusteringReport =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(report.delta_to_truth, Some(0.0));
    let matrix_residual = report.algorithm_parameters["matrix_residual"]
        .as_f64()
        .unwrap();
    assert!(matrix_residual < 1e-7);

    // Matrix mode requires --k.
    let out = run(&[
        "cluster",
        matrix_path.to_str().unwrap(),
        "--mode",
        "matrix",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--k"));
}

#[test]
fn embedding_mode_rejects_mismatched_k() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("mk");
    let out = run(&[
        "generate", "embedding", "--sizes", "4,4", "--eps", "0", "--seed", "2", "--out",
        stem.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let emb = dir.path().join("mk.embedding.json");
    let out = run(&[
        "cluster",
        emb.to_str().unwrap(),
        "--mode",
        "embedding",
        "--k",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimension"));
}

#[test]
fn invalid_sizes_names_the_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "generate",
        "embedding",
        "--sizes",
        "9",
        "--n",
        "3",
        "--out",
        dir.path().join("x").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("--sizes"), "{stderr}");
}

#[test]
fn missing_file_exits_2() {
    let out = run(&[
        "cluster",
        "/nonexistent/fixture.graph",
        "--mode",
        "graph",
        "--k",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_error_reports_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.graph");
    std::fs::write(&path, "0 1 1.0\nnot an edge\n").unwrap();
    let out = run(&["cluster", path.to_str().unwrap(), "--mode", "graph", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 2"), "{stderr}");
}

#[test]
fn verify_round_suite_exits_0() {
    let out = run(&["verify", "round", "--trials", "50", "--seed", "3"]);
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("four_x_approximation_guarantee"));
}

#[test]
fn verify_csv_export() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("suite.csv");
    let out = run(&[
        "verify",
        "similarity",
        "--trials",
        "20",
        "--format",
        "csv",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("suite,property,trials,failures,flagged,passed"));
    assert!(csv.lines().count() > 3);
}

#[test]
fn thread_cap_env_accepted() {
    let out = bin()
        .env("SUBSPACE_ROUND_THREADS", "1")
        .args(["verify", "round", "--trials", "10"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
}

#[test]
fn reports_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("th");
    let out = run(&[
        "generate", "graph", "--sizes", "20,12,6", "--cross", "0.4", "--seed", "3", "--out",
        stem.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let graph_path = dir.path().join("th.graph");

    let report_at = |threads: &str| -> ClusteringReport {
        let out = bin()
            .env("SUBSPACE_ROUND_THREADS", threads)
            .args([
                "cluster",
                graph_path.to_str().unwrap(),
                "--mode",
                "graph",
                "--k",
                "3",
            ])
            .output()
            .unwrap();
        assert!(out.status.success(), "{out:?}");
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap()
    };
    let single = report_at("1");
    let parallel = report_at("4");
    assert!(single.same_metrics(&parallel));
}

#[test]
fn graph_fixture_survives_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("rt");
    let out = run(&[
        "generate", "graph", "--sizes", "5,4", "--cross", "0.25", "--seed", "11", "--intra",
        "expander:3", "--out",
        stem.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let path = dir.path().join("rt.graph");
    let g = io::read_graph(Path::new(&path)).unwrap();
    let text = io::format_graph(&g);
    assert_eq!(io::parse_graph(&text).unwrap(), g);
}

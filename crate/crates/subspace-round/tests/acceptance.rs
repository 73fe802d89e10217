//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! with the measured values. Criteria run at their stated tolerances.

use std::time::Instant;

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subspace_round::graph;
use subspace_round::linalg;
use subspace_round::partitions::{basis_matrix, delta_partitions, NodeSet, Partition};
use subspace_round::spectral::{self, Embedding};
use subspace_round::synth;
use subspace_round::verify::{self, loglog_slope, run_suite, Suite};

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn property<'a>(
    suite: &'a verify::SuiteReport,
    name: &str,
) -> &'a verify::PropertyResult {
    suite
        .properties
        .iter()
        .find(|p| p.name == name)
        .unwrap_or_else(|| panic!("missing property {name}"))
}

#[test]
fn criterion_01_exact_recovery_base_case() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1);
    let mut worst = 0.0f64;
    for trial in 0..50u64 {
        let k = rng.gen_range(1..=5usize);
        let n = rng.gen_range((3 * k).max(4)..=60);
        // Compose cluster sizes; every third instance gets a singleton
        // cluster, every fourth leaves some nodes uncovered.
        let covered = if trial % 4 == 3 {
            n - rng.gen_range(1..=(n / 4).max(1))
        } else {
            n
        };
        let mut sizes = vec![1usize; k];
        let mut rest = covered - k;
        if trial % 3 == 0 && k > 1 {
            for _ in 0..rest {
                sizes[rng.gen_range(0..k - 1)] += 1;
            }
        } else {
            while rest > 0 {
                sizes[rng.gen_range(0..k)] += 1;
                rest -= 1;
            }
        }
        let (y, truth, _) = synth::planted_embedding(n, &sizes, 0.0, trial).unwrap();
        let found = spectral::spectral_clustering(&y).unwrap();
        let (delta, _) = delta_partitions(found.sets(), truth.sets()).unwrap();
        worst = worst.max(delta);
        assert_eq!(delta, 0.0, "trial {trial}: n={n} sizes={sizes:?}");
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = worst == 0.0 && elapsed < 5.0;
    report(
        "01 exact-recovery base case",
        pass,
        &format!("50 plants recovered exactly, worst Δ = {worst}, {elapsed:.2}s"),
    );
    assert!(elapsed < 5.0, "runtime {elapsed:.2}s exceeds 5s");
}

#[test]
fn criterion_02_sqrt_eps_scaling() {
    let start = Instant::now();
    let points = verify::run_eps_sweep(&[1e-6, 1e-5, 1e-4, 1e-3], 0xC2).unwrap();
    let elapsed = start.elapsed().as_secs_f64();

    let mut bound_ok = true;
    let mut table = Vec::new();
    for p in &points {
        bound_ok &= p.delta <= 200.0 * p.eps.sqrt();
        table.push(format!(
            "eps {:.3e}: delta {:.3e}, residual {:.3e}",
            p.eps, p.delta, p.residual
        ));
    }
    let epses: Vec<f64> = points.iter().map(|p| p.eps).collect();
    let deltas: Vec<f64> = points.iter().map(|p| p.delta).collect();
    let residuals: Vec<f64> = points.iter().map(|p| p.residual).collect();
    let delta_slope = loglog_slope(&epses, &deltas);
    let residual_slope = loglog_slope(&epses, &residuals);
    let delta_slope_ok = delta_slope.is_some_and(|s| (0.35..=0.65).contains(&s));
    let residual_slope_ok = residual_slope.is_some_and(|s| (0.35..=0.65).contains(&s));

    let pass = bound_ok && delta_slope_ok && residual_slope_ok && elapsed < 60.0;
    report(
        "02 sqrt-eps scaling",
        pass,
        &format!(
            "bound 200·sqrt(eps): {}; delta slope {:?} in band: {}; residual slope {:?} in band: {}; {:.1}s; {}",
            bound_ok, delta_slope, delta_slope_ok, residual_slope, residual_slope_ok,
            elapsed,
            table.join("; ")
        ),
    );
    assert!(bound_ok, "closeness exceeded 200·sqrt(eps)");
    assert!(elapsed < 60.0, "runtime {elapsed:.2}s exceeds 60s");
    assert!(
        delta_slope_ok,
        "closeness log-log slope {delta_slope:?} outside [0.35, 0.65]: {}",
        table.join("; ")
    );
    assert!(
        residual_slope_ok,
        "residual log-log slope {residual_slope:?} outside [0.35, 0.65]: {}",
        table.join("; ")
    );
}

#[test]
fn criterion_03_small_cluster_exactness() {
    let points = verify::run_eps_sweep(&[1e-6, 1e-5, 1e-4], 0xC2).unwrap();
    let all_exact = points
        .iter()
        .filter(|p| p.eps <= 1e-4)
        .all(|p| p.small_clusters_exact);
    report(
        "03 small-cluster exactness",
        all_exact,
        "clusters of size ≤ 3 recovered exactly at every eps ≤ 1e-4",
    );
    assert!(all_exact);
}

#[test]
fn criterion_04_round_guarantee() {
    let start = Instant::now();
    let suite = run_suite(Suite::Round, 0xC4, 200, &[]);
    let elapsed = start.elapsed().as_secs_f64();
    let four_x = property(&suite, "four_x_approximation_guarantee");
    let pass = four_x.failures == 0 && elapsed < 30.0;
    report(
        "04 round 4x guarantee",
        pass,
        &format!(
            "{} exhaustive trials, {} violations, {elapsed:.1}s",
            four_x.trials, four_x.failures
        ),
    );
    assert_eq!(four_x.failures, 0, "{:?}", four_x.worst);
    assert!(elapsed < 30.0, "runtime {elapsed:.2}s exceeds 30s");
}

#[test]
fn criterion_05_unravel_guarantee() {
    let suite = run_suite(Suite::Unravel, 0xC5, 100, &[]);
    let fixture = property(&suite, "reference_fixture_reproduced");
    let plants = property(&suite, "planted_family_guarantee");
    let pass = fixture.failures == 0 && plants.failures == 0;
    report(
        "05 unravel guarantee",
        pass,
        &format!(
            "fixture exact; {} planted families within 4·delta0",
            plants.trials
        ),
    );
    assert_eq!(fixture.failures, 0, "{:?}", fixture.worst);
    assert_eq!(plants.failures, 0, "{:?}", plants.worst);
}

#[test]
fn criterion_06_similarity_sandwiches() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC6);
    // Two-sided similarity sandwich on 500 pairs with Δ ≤ 0.3.
    let mut produced = 0;
    let mut sandwich_worst = 0.0f64;
    let mut column_worst = 0.0f64;
    while produced < 500 {
        let n = rng.gen_range(10..=30);
        let k = rng.gen_range(2..=5.min(n / 2));
        let Some((a, b, delta)) = close_pair(n, k, 0.3, &mut rng) else {
            continue;
        };
        produced += 1;
        let ba = basis_matrix(&a);
        let bb = basis_matrix(&b);
        let perp = &Array2::<f64>::eye(n) - &ba.dot(&ba.t());
        let s = linalg::spectral_norm(&perp.dot(&bb), 1e-12);
        let mid = s * s;
        sandwich_worst = sandwich_worst
            .max(delta - mid)
            .max(mid - 2.0 * delta);
        let (_, pi) = delta_partitions(a.sets(), b.sets()).unwrap();
        let mut reordered = Array2::zeros((n, k));
        for (i, &j) in pi.iter().enumerate() {
            reordered.column_mut(i).assign(&bb.column(j));
        }
        let d = linalg::spectral_norm(&(&ba - &reordered), 1e-12);
        column_worst = column_worst.max(d * d - 4.0 * delta);
    }
    let sandwich_ok = sandwich_worst <= 1e-9;
    let column_ok = column_worst <= 1e-9;

    // Projector-distance equality on 500 random orthonormal pairs.
    let mut equality_worst = 0.0f64;
    for _ in 0..500 {
        let n = rng.gen_range(4..=20);
        let k = rng.gen_range(1..=5.min(n));
        let a = orthonormal_cols(n, k, &mut rng);
        let b = orthonormal_cols(n, k, &mut rng);
        let lhs = linalg::spectral_norm(&(&a.dot(&a.t()) - &b.dot(&b.t())), 1e-12);
        let perp = &Array2::<f64>::eye(n) - &a.dot(&a.t());
        let rhs = linalg::spectral_norm(&perp.dot(&b), 1e-12);
        equality_worst = equality_worst.max((lhs - rhs).abs());
    }
    let equality_ok = equality_worst <= 1e-7;

    let pass = sandwich_ok && column_ok && equality_ok;
    report(
        "06 similarity sandwiches",
        pass,
        &format!(
            "two-sided worst slack {sandwich_worst:.2e}; column-bound worst slack {column_worst:.2e}; equality worst deviation {equality_worst:.2e}"
        ),
    );
    assert!(sandwich_ok);
    assert!(column_ok);
    assert!(equality_ok);
}

#[test]
fn criterion_07_graph_application() {
    let start = Instant::now();
    let points = verify::run_graph_sweep(&[1e-2, 1e-3, 1e-4], 0xC7).unwrap();
    let elapsed = start.elapsed().as_secs_f64();

    let monotone = points.windows(2).all(|w| w[1].delta <= w[0].delta + 1e-12);
    let mid = points
        .iter()
        .find(|p| (p.ratio - 1e-3).abs() / 1e-3 < 0.9)
        .expect("mid-ratio plant present");
    let mid_ok = mid.delta <= 0.3;
    let brackets_ok = points.iter().all(|p| p.bracket_ok);
    let lambda_stated_ok = points.iter().all(|p| p.lambda_ok);
    let lambda_provable_ok = points.iter().all(|p| p.lambda_twice_ok);

    let table: Vec<String> = points
        .iter()
        .map(|p| {
            format!(
                "ratio {:.2e}: delta {:.3e}, lambda_k {:.3e}, phi {:.3e}",
                p.ratio, p.delta, p.lambda_k, p.phi
            )
        })
        .collect();
    let pass = monotone && mid_ok && brackets_ok && lambda_stated_ok && elapsed < 120.0;
    report(
        "07 graph application",
        pass,
        &format!(
            "monotone: {monotone}; delta at 1e-3 ≤ 0.3: {mid_ok}; brackets: {brackets_ok}; lambda_k ≤ phi (stated): {lambda_stated_ok}; lambda_k ≤ 2·phi (provable): {lambda_provable_ok}; {elapsed:.1}s; {}",
            table.join("; ")
        ),
    );
    assert!(monotone, "closeness not monotone: {}", table.join("; "));
    assert!(mid_ok, "closeness above 0.3 at the 1e-3 plant");
    assert!(brackets_ok, "spectral bracket violated");
    assert!(elapsed < 120.0, "runtime {elapsed:.2}s exceeds 120s");
    assert!(
        lambda_stated_ok,
        "stated lambda_k ≤ phi_k witness bound violated (the provable lambda_k ≤ 2·phi form holds: {lambda_provable_ok}): {}",
        table.join("; ")
    );
}

#[test]
fn criterion_08_matrix_approximation() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC8);
    let mut lines = Vec::new();
    let mut pass = true;
    for &eps in &[1e-4f64, 1e-2] {
        let n = 40;
        let truth = synth::planted_partition(n, &[20, 12, 8], 0xC8).unwrap();
        let b = basis_matrix(&truth);
        let proj = b.dot(&b.t());
        let raw = Array2::from_shape_fn((n, n), |_| rng.gen_range(-1.0..1.0));
        let mut e = (&raw + &raw.t()) * 0.5;
        let norm = linalg::spectral_norm(&e, 1e-12);
        e *= eps / norm;
        let x = &proj + &e;
        let found = graph::approximate_matrix(&x, 3).unwrap();
        let err = graph::projector_distance(&x, &found);
        let bound = 10.0 * eps.powf(0.25);
        pass &= err <= bound;
        lines.push(format!("eps {eps:.0e}: error {err:.4e} ≤ {bound:.4e}"));
        assert!(err <= bound, "eps {eps}: {err} > {bound}");
    }
    report("08 matrix approximation", pass, &lines.join("; "));
}

#[test]
fn criterion_09_reduction_verifier() {
    let truth = synth::planted_partition(9, &[4, 3, 2], 0xC9).unwrap();
    let b = basis_matrix(&truth);
    let x = b.dot(&b.t());
    let y = Embedding::new(b.t().to_owned()).unwrap();

    let exact = graph::verify_reduction_feasibility(&x, &y, 0.0, Some(&truth)).unwrap();
    let exact_ok = exact.all_pass();
    assert!(exact_ok, "exact projector must pass all checks: {exact:?}");

    let flagged = |x: &Array2<f64>, name: &str| -> bool {
        let report = graph::verify_reduction_feasibility(x, &y, 0.0, None).unwrap();
        report.checks.iter().any(|c| c.name == name && !c.pass)
    };

    // Doubly-stochastic violation.
    let mut bumped = x.clone();
    bumped[[0, 8]] += 0.5;
    bumped[[8, 0]] += 0.5;
    let stochastic_flagged = flagged(&bumped, "rows_sum_to_one");

    // Trace violation.
    let scaled = &x * 1.5;
    let trace_flagged = flagged(&scaled, "trace_k");

    // Negative off-diagonal weight: Laplacian dominance breaks.
    let mut negative = x.clone();
    negative[[0, 1]] -= 0.6;
    negative[[1, 0]] -= 0.6;
    negative[[0, 0]] += 0.6;
    negative[[1, 1]] += 0.6;
    let dd_flagged = flagged(&negative, "laplacian_diagonally_dominant");

    // Indefinite doubly-stochastic matrix: PSD breaks.
    let n = x.nrows();
    let mut swap = Array2::zeros((n, n));
    for i in 0..n {
        swap[[i, n - 1 - i]] = 1.0;
    }
    let psd_flagged = flagged(&swap, "positive_semidefinite");

    // Misaligned projector: the upper envelope at eps = 0 breaks.
    let other = synth::planted_partition(9, &[3, 3, 3], 0xC9 + 1).unwrap();
    let bo = basis_matrix(&other);
    let misaligned = bo.dot(&bo.t());
    let envelope_flagged = flagged(&misaligned, "upper_envelope");

    let all_flagged = stochastic_flagged
        && trace_flagged
        && dd_flagged
        && psd_flagged
        && envelope_flagged;
    report(
        "09 reduction verifier",
        exact_ok && all_flagged,
        &format!(
            "exact fixture passes; violations flagged: stochastic {stochastic_flagged}, trace {trace_flagged}, dominance {dd_flagged}, psd {psd_flagged}, envelope {envelope_flagged}"
        ),
    );
    assert!(all_flagged);
}

#[test]
fn criterion_10_linear_algebra_oracles() {
    let suite = run_suite(Suite::Linalg, 0xCA, 200, &[]);
    let oracle = property(&suite, "power_iteration_matches_dense_oracle");
    let pass = oracle.failures == 0 && oracle.trials >= 200;
    report(
        "10 linear-algebra oracles",
        pass,
        &format!(
            "{} random matrices against the dense oracle, {} deviations beyond relative 1e-6",
            oracle.trials, oracle.failures
        ),
    );
    assert!(oracle.trials >= 200);
    assert_eq!(oracle.failures, 0, "{:?}", oracle.worst);
}

// --------------------------------------------------------------- helpers

fn orthonormal_cols(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Array2<f64> {
    loop {
        let raw = Array2::from_shape_fn((k, n), |_| rng.gen_range(-1.0..1.0));
        if let Ok(basis) = linalg::orthonormal_row_basis(&raw, 1e-9) {
            if basis.nrows() == k {
                return basis.t().to_owned();
            }
        }
    }
}

fn close_pair(
    n: usize,
    k: usize,
    max_delta: f64,
    rng: &mut ChaCha8Rng,
) -> Option<(Partition, Partition, f64)> {
    for _ in 0..50 {
        let mut assign: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
        let base = assign.clone();
        for slot in assign.iter_mut() {
            if rng.gen_bool(0.08) {
                *slot = rng.gen_range(0..k);
            }
        }
        let build = |labels: &[usize]| -> Option<Partition> {
            let mut sets = vec![Vec::new(); k];
            for (u, &i) in labels.iter().enumerate() {
                sets[i].push(u);
            }
            if sets.iter().any(|s| s.is_empty()) {
                return None;
            }
            Some(Partition::new(n, sets.into_iter().map(NodeSet::new).collect()).unwrap())
        };
        let (Some(a), Some(b)) = (build(&base), build(&assign)) else {
            continue;
        };
        let (delta, _) = delta_partitions(a.sets(), b.sets()).unwrap();
        if delta <= max_delta {
            return Some((a, b, delta));
        }
    }
    None
}

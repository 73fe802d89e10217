//! Graphs, Laplacians, expansion objectives, and the applications built on
//! the clustering pipeline: min-max k-partition from Laplacian eigenvectors,
//! matrix approximation by projectors of partitions, graph approximation by
//! unions of normalized cliques, and the reduction feasibility verifier.

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};
use crate::linalg::{self, DEFAULT_POWER_TOL, DEFAULT_RANK_TOL};
use crate::partitions::{basis_matrix, NodeSet, Partition};
use crate::spectral::{self, Embedding};

/// Undirected weighted graph on nodes 0..n−1 with positive edge weights and
/// no duplicate pairs or self-loops.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl WeightedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v, w) in edges {
            if u >= n {
                return Err(Error::NodeOutOfRange { node: u, n });
            }
            if v >= n {
                return Err(Error::NodeOutOfRange { node: v, n });
            }
            if u == v {
                return Err(Error::Numeric(format!("self-loop at node {u}")));
            }
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::Numeric(format!(
                    "edge ({u}, {v}) has non-positive weight {w}"
                )));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::Numeric(format!(
                    "duplicate edge between {} and {}",
                    key.0, key.1
                )));
            }
            normalized.push((key.0, key.1, w));
        }
        normalized.sort_by_key(|&(u, v, _)| (u, v));
        Ok(WeightedGraph {
            n,
            edges: normalized,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn adjacency(&self) -> Array2<f64> {
        let mut a = Array2::zeros((self.n, self.n));
        for &(u, v, w) in &self.edges {
            a[[u, v]] = w;
            a[[v, u]] = w;
        }
        a
    }

    /// Combinatorial Laplacian L = D − A.
    pub fn laplacian(&self) -> Array2<f64> {
        let mut l = Array2::zeros((self.n, self.n));
        for &(u, v, w) in &self.edges {
            l[[u, v]] -= w;
            l[[v, u]] -= w;
            l[[u, u]] += w;
            l[[v, v]] += w;
        }
        l
    }

    /// Total weight crossing between T and its complement.
    pub fn cut_weight(&self, t: &NodeSet) -> f64 {
        self.edges
            .iter()
            .filter(|&&(u, v, _)| t.contains(u) != t.contains(v))
            .map(|&(_, _, w)| w)
            .sum()
    }
}

/// The low end of a Laplacian spectrum: the `k` smallest eigenvalues
/// (ascending) with their eigenvectors, plus a Ritz estimate of λ_{k+1}
/// appended to `eigenvalues` when the dimension allows one.
#[derive(Debug, Clone)]
pub struct GraphSpectrum {
    pub laplacian: Array2<f64>,
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Array1<f64>>,
}

impl GraphSpectrum {
    /// Smallest `k` eigenpairs of L via block power iteration on the
    /// Gershgorin-shifted complement c·I − L.
    pub fn compute(graph: &WeightedGraph, k: usize) -> Result<Self> {
        let l = graph.laplacian();
        let n = graph.n();
        let k = k.min(n);
        // Gershgorin upper bound on the Laplacian spectrum: 2 · max degree.
        let c = (0..n)
            .map(|i| 2.0 * l[[i, i]])
            .fold(0.0f64, f64::max)
            .max(1.0);
        let shifted = &Array2::<f64>::eye(n) * c - &l;
        let (decomposition, tail) =
            linalg::top_k_eigenpairs_with_tail(&shifted, k, DEFAULT_POWER_TOL)?;
        let mut eigenvalues: Vec<f64> = decomposition.values.iter().map(|v| c - v).collect();
        if let Some(t) = tail {
            eigenvalues.push(c - t);
        }
        Ok(GraphSpectrum {
            laplacian: l,
            eigenvalues,
            eigenvectors: decomposition.vectors,
        })
    }
}

/// Expansion of a single cluster: crossing weight over cardinality.
pub fn expansion(graph: &WeightedGraph, t: &NodeSet) -> Result<f64> {
    if t.is_empty() || t.len() >= graph.n() {
        return Err(Error::EmptyOrFullSet);
    }
    Ok(graph.cut_weight(t) / t.len() as f64)
}

fn require_full_cover(graph: &WeightedGraph, partition: &Partition) -> Result<()> {
    if partition.n() != graph.n() || !partition.covers_all() {
        return Err(Error::IncompleteCover);
    }
    Ok(())
}

/// max_T C(T, T̄)/|T| over a full partition. The T = V term is zero.
pub fn max_expansion(graph: &WeightedGraph, partition: &Partition) -> Result<f64> {
    require_full_cover(graph, partition)?;
    Ok(partition
        .sets()
        .iter()
        .map(|t| graph.cut_weight(t) / t.len() as f64)
        .fold(0.0, f64::max))
}

/// max_S C(S, S̄)/min(|S|, |S̄|), the symmetric form of the same objective.
pub fn phi_objective_symmetric(graph: &WeightedGraph, partition: &Partition) -> Result<f64> {
    require_full_cover(graph, partition)?;
    Ok(partition
        .sets()
        .iter()
        .map(|s| {
            let smaller = s.len().min(graph.n() - s.len());
            if smaller == 0 {
                0.0
            } else {
                graph.cut_weight(s) / smaller as f64
            }
        })
        .fold(0.0, f64::max))
}

/// Two-sided spectral bracket for the max expansion of a full partition:
/// ½∥ΓᵀLΓ∥₂ ≤ max expansion ≤ ∥ΓᵀLΓ∥₂.
pub fn expansion_spectral_bound(
    graph: &WeightedGraph,
    partition: &Partition,
) -> Result<(f64, f64)> {
    require_full_cover(graph, partition)?;
    let b = basis_matrix(partition);
    let m = b.t().dot(&graph.laplacian()).dot(&b);
    let s = linalg::spectral_norm(&m, DEFAULT_POWER_TOL);
    Ok((0.5 * s, s))
}

/// Everything cluster_graph measures about its own output.
#[derive(Debug, Clone)]
pub struct GraphClusteringStats {
    pub lambda_k1: Option<f64>,
    pub per_cluster_expansion: Vec<f64>,
    pub residual: f64,
}

/// Cluster a graph into k parts: embed with the smallest k Laplacian
/// eigenvectors, run the clustering pipeline, then cover leftover nodes by
/// nearest center.
pub fn cluster_graph(graph: &WeightedGraph, k: usize) -> Result<(Partition, GraphClusteringStats)> {
    let n = graph.n();
    if k < 1 || k > n {
        return Err(Error::Numeric(format!("k = {k} out of range for n = {n}")));
    }
    let spectrum = GraphSpectrum::compute(graph, k)?;
    let mut rows = Array2::zeros((k, n));
    for (i, v) in spectrum.eigenvectors.iter().take(k).enumerate() {
        rows.row_mut(i).assign(v);
    }
    let y = Embedding::new(linalg::orthonormal_row_basis(&rows, DEFAULT_RANK_TOL)?)?;
    let raw = spectral::spectral_clustering(&y)?;
    let covered = spectral::cover_all(&y, &raw)?;
    let stats = GraphClusteringStats {
        lambda_k1: spectrum.eigenvalues.get(k).copied(),
        per_cluster_expansion: covered
            .sets()
            .iter()
            .map(|t| {
                if t.len() == n {
                    0.0
                } else {
                    graph.cut_weight(t) / t.len() as f64
                }
            })
            .collect(),
        residual: spectral::residual(&y, &covered),
    };
    Ok((covered, stats))
}

/// Approximate a symmetric matrix by a partition projector: embed with the
/// top k eigenvectors of X and run the pipeline. The caller evaluates
/// ∥X − Γ^proj∥₂ as needed.
pub fn approximate_matrix(x: &Array2<f64>, k: usize) -> Result<Partition> {
    let decomposition = linalg::top_k_eigenpairs(x, k, DEFAULT_POWER_TOL)?;
    let n = x.nrows();
    let mut rows = Array2::zeros((k, n));
    for (i, v) in decomposition.vectors.iter().enumerate() {
        rows.row_mut(i).assign(v);
    }
    let y = Embedding::new(linalg::orthonormal_row_basis(&rows, DEFAULT_RANK_TOL)?)?;
    spectral::spectral_clustering(&y)
}

/// Spectral distance from X to the projector of a partition.
pub fn projector_distance(x: &Array2<f64>, partition: &Partition) -> f64 {
    let b = basis_matrix(partition);
    let p = b.dot(&b.t());
    linalg::spectral_norm(&(x - &p), DEFAULT_POWER_TOL)
}

/// Approximate a graph by a disjoint union of normalized cliques: apply
/// `approximate_matrix` to I − L (L rescaled into [0, 1] first when its
/// norm exceeds 1, which preserves the argmin partition at plant scale).
/// Returns the partition and ∥L − Γ^⊥∥₂ measured on the original Laplacian.
pub fn approximate_graph_by_cliques(
    graph: &WeightedGraph,
    k: usize,
) -> Result<(Partition, f64)> {
    let l = graph.laplacian();
    let n = graph.n();
    let norm = linalg::spectral_norm(&l, DEFAULT_POWER_TOL);
    let scale = norm.max(1.0);
    let x = &Array2::<f64>::eye(n) - &(&l / scale);
    let partition = approximate_matrix(&x, k)?;
    let b = basis_matrix(&partition);
    let perp = &Array2::<f64>::eye(n) - &b.dot(&b.t());
    let achieved = linalg::spectral_norm(&(&l - &perp), DEFAULT_POWER_TOL);
    Ok((partition, achieved))
}

/// One feasibility condition: measured value and whether it passed at the
/// 1e-8 tolerance.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub pass: bool,
}

impl Check {
    fn at_most(name: &str, value: f64, bound: f64) -> Self {
        Check {
            name: name.to_string(),
            value,
            pass: value <= bound + FEASIBILITY_TOL,
        }
    }
}

pub const FEASIBILITY_TOL: f64 = 1e-8;

/// Report of the reduction feasibility verifier: every condition the
/// certified graph construction imposes on a candidate X, each checked at
/// tolerance 1e-8, plus raw per-cluster expansion values when a reference
/// partition is supplied (their hidden constant is unspecified, so they are
/// reported, not judged).
#[derive(Debug, Clone, serde::Serialize)]
pub struct FeasibilityReport {
    pub checks: Vec<Check>,
    pub lambda_k1: f64,
    pub lambda_k1_bound: f64,
    pub cluster_expansions: Option<Vec<f64>>,
}

impl FeasibilityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Verify the feasibility conditions of a candidate X against the embedding
/// Y at level ε: (i) X ⪯ Y^proj + √ε·Y^⊥, (ii) YXYᵀ ⪰ (1−ε)I, (iii) rows
/// and columns sum to 1, the Laplacian I − X is diagonally dominant, X is
/// PSD, and trace(X) = k. Also reports σ_{k+1}(X) against the √ε bound.
pub fn verify_reduction_feasibility(
    x: &Array2<f64>,
    y: &Embedding,
    eps: f64,
    truth: Option<&Partition>,
) -> Result<FeasibilityReport> {
    let n = x.nrows();
    if x.ncols() != n || n != y.n() {
        return Err(Error::SizeMismatch {
            left: x.ncols(),
            right: y.n(),
        });
    }
    let k = y.k();
    let sqrt_eps = eps.sqrt();
    let mut checks = Vec::new();

    // (i) λ_max(X − Y^proj − √ε·Y^⊥) ≤ 0.
    let y_proj = y.matrix().t().dot(y.matrix());
    let y_perp = &Array2::<f64>::eye(n) - &y_proj;
    let diff = x - &y_proj - &(&y_perp * sqrt_eps);
    let sym = symmetrize(&diff);
    let top = linalg::top_k_eigenpairs(&sym, 1, DEFAULT_POWER_TOL)?.values[0];
    checks.push(Check::at_most("upper_envelope", top, 0.0));

    // (ii) λ_min(YXYᵀ) ≥ 1 − ε.
    let inner = symmetrize(&y.matrix().dot(x).dot(&y.matrix().t()));
    let vals = linalg::top_k_eigenpairs(&inner, k, DEFAULT_POWER_TOL)?.values;
    let min_inner = vals.last().copied().unwrap_or(0.0);
    checks.push(Check::at_most(
        "gram_lower_bound",
        (1.0 - eps) - min_inner,
        0.0,
    ));

    // (iii) doubly stochastic.
    let row_dev = (0..n)
        .map(|i| ((0..n).map(|j| x[[i, j]]).sum::<f64>() - 1.0).abs())
        .fold(0.0f64, f64::max);
    checks.push(Check::at_most("rows_sum_to_one", row_dev, 0.0));
    let col_dev = (0..n)
        .map(|j| ((0..n).map(|i| x[[i, j]]).sum::<f64>() - 1.0).abs())
        .fold(0.0f64, f64::max);
    checks.push(Check::at_most("cols_sum_to_one", col_dev, 0.0));

    // (iii) the Laplacian I − X is diagonally dominant; given unit row sums
    // this is the non-negativity of the off-diagonal weights.
    let dd_dev = (0..n)
        .map(|i| {
            let off: f64 = (0..n).filter(|&j| j != i).map(|j| x[[i, j]].abs()).sum();
            off - (1.0 - x[[i, i]])
        })
        .fold(0.0f64, f64::max);
    checks.push(Check::at_most("laplacian_diagonally_dominant", dd_dev, 0.0));

    // (iii) PSD: smallest eigenvalue of X is non-negative.
    let neg = symmetrize(&(x * -1.0));
    let max_neg = linalg::top_k_eigenpairs(&neg, 1, DEFAULT_POWER_TOL)?.values[0];
    checks.push(Check::at_most("positive_semidefinite", max_neg, 0.0));

    // (iii) trace k.
    let trace: f64 = (0..n).map(|i| x[[i, i]]).sum();
    checks.push(Check::at_most("trace_k", (trace - k as f64).abs(), 0.0));

    // λ_{k+1} of the normalized Laplacian I − X is 1 − σ_{k+1}(X) ≥ 1 − √ε.
    let sym_x = symmetrize(x);
    let count = (k + 1).min(n);
    let sigma = linalg::top_k_eigenpairs(&sym_x, count, DEFAULT_POWER_TOL)?.values;
    let sigma_k1 = if k < n { sigma[k].max(0.0) } else { 0.0 };
    let lambda_k1 = 1.0 - sigma_k1;
    checks.push(Check::at_most("lambda_k1_bound", sigma_k1, sqrt_eps));

    let cluster_expansions = truth.map(|p| {
        p.sets()
            .iter()
            .map(|t| {
                // Expansion in the graph whose adjacency is X (self-loops
                // do not cross): Σ_{u∈T, v∉T} X_uv / |T|.
                let mut cut = 0.0;
                for &u in t.members() {
                    for v in 0..n {
                        if !t.contains(v) {
                            cut += x[[u, v]];
                        }
                    }
                }
                cut / t.len() as f64
            })
            .collect()
    });

    Ok(FeasibilityReport {
        checks,
        lambda_k1,
        lambda_k1_bound: 1.0 - sqrt_eps,
        cluster_expansions,
    })
}

fn symmetrize(m: &Array2<f64>) -> Array2<f64> {
    (m + &m.t().to_owned()) * 0.5
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::delta_partitions;

    fn set(ids: &[usize]) -> NodeSet {
        NodeSet::new(ids.to_vec())
    }

    fn disjoint_triangles() -> (WeightedGraph, Partition) {
        let mut edges = Vec::new();
        for block in 0..3 {
            let b = 3 * block;
            edges.push((b, b + 1, 1.0));
            edges.push((b + 1, b + 2, 1.0));
            edges.push((b, b + 2, 1.0));
        }
        let g = WeightedGraph::new(9, edges).unwrap();
        let p = Partition::new(
            9,
            vec![set(&[0, 1, 2]), set(&[3, 4, 5]), set(&[6, 7, 8])],
        )
        .unwrap();
        (g, p)
    }

    #[test]
    fn graph_validation() {
        assert!(WeightedGraph::new(2, vec![(0, 0, 1.0)]).is_err());
        assert!(WeightedGraph::new(2, vec![(0, 1, -1.0)]).is_err());
        assert!(WeightedGraph::new(2, vec![(0, 1, 1.0), (1, 0, 2.0)]).is_err());
        assert!(WeightedGraph::new(2, vec![(0, 3, 1.0)]).is_err());
    }

    #[test]
    fn expansion_examples() {
        let (g, p) = disjoint_triangles();
        assert_eq!(expansion(&g, &p.sets()[0]).unwrap(), 0.0);

        let single = WeightedGraph::new(2, vec![(0, 1, 1.0)]).unwrap();
        assert_eq!(expansion(&single, &set(&[0])).unwrap(), 1.0);

        let cycle = WeightedGraph::new(
            4,
            vec![(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 3, 1.0)],
        )
        .unwrap();
        assert_eq!(expansion(&cycle, &set(&[0, 1])).unwrap(), 1.0);

        assert!(matches!(
            expansion(&single, &set(&[0, 1])),
            Err(Error::EmptyOrFullSet)
        ));
    }

    #[test]
    fn expansion_forms_agree() {
        let (g, p) = disjoint_triangles();
        assert_eq!(max_expansion(&g, &p).unwrap(), 0.0);
        assert_eq!(phi_objective_symmetric(&g, &p).unwrap(), 0.0);

        let path = WeightedGraph::new(3, vec![(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let split = Partition::new(3, vec![set(&[0]), set(&[1, 2])]).unwrap();
        assert_eq!(max_expansion(&path, &split).unwrap(), 1.0);
        assert_eq!(phi_objective_symmetric(&path, &split).unwrap(), 1.0);

        // Random graphs and partitions: the two forms always coincide.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let n = rng.gen_range(3..=9);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v, rng.gen_range(0.1..2.0)));
                    }
                }
            }
            let g = WeightedGraph::new(n, edges).unwrap();
            let k = rng.gen_range(1..=3.min(n));
            let mut sets = vec![Vec::new(); k];
            for u in 0..n {
                sets[rng.gen_range(0..k)].push(u);
            }
            if sets.iter().any(|s| s.is_empty()) {
                continue;
            }
            let p = Partition::new(n, sets.into_iter().map(NodeSet::new).collect()).unwrap();
            let a = max_expansion(&g, &p).unwrap();
            let b = phi_objective_symmetric(&g, &p).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn incomplete_cover_rejected() {
        let (g, _) = disjoint_triangles();
        let partial = Partition::new(9, vec![set(&[0, 1, 2])]).unwrap();
        assert!(matches!(
            max_expansion(&g, &partial),
            Err(Error::IncompleteCover)
        ));
    }

    #[test]
    fn spectral_bracket() {
        let (g, p) = disjoint_triangles();
        let (lo, hi) = expansion_spectral_bound(&g, &p).unwrap();
        assert!(lo.abs() < 1e-9 && hi.abs() < 1e-9);

        // Single unit edge with singleton clusters: ΓᵀLΓ = L, norm 2,
        // bracketing the max expansion 1.
        let single = WeightedGraph::new(2, vec![(0, 1, 1.0)]).unwrap();
        let p2 = Partition::new(2, vec![set(&[0]), set(&[1])]).unwrap();
        let (lo, hi) = expansion_spectral_bound(&single, &p2).unwrap();
        assert!((hi - 2.0).abs() < 1e-9);
        let phi = max_expansion(&single, &p2).unwrap();
        assert!(lo <= phi + 1e-12 && phi <= hi + 1e-12);
    }

    #[test]
    fn laplacian_quadratic_form_is_cut() {
        let (g, p) = disjoint_triangles();
        let l = g.laplacian();
        for t in p.sets() {
            let ind = t.indicator(9);
            let quad = ind.dot(&l.dot(&ind));
            assert!((quad - g.cut_weight(t)).abs() < 1e-12);
        }
        let cycle = WeightedGraph::new(
            4,
            vec![(0, 1, 1.0), (1, 2, 0.5), (2, 3, 1.5), (0, 3, 1.0)],
        )
        .unwrap();
        let t = set(&[0, 1]);
        let ind = t.indicator(4);
        assert!((ind.dot(&cycle.laplacian().dot(&ind)) - cycle.cut_weight(&t)).abs() < 1e-12);
    }

    #[test]
    fn spectrum_of_disconnected_components() {
        let (g, _) = disjoint_triangles();
        let s = GraphSpectrum::compute(&g, 4).unwrap();
        for i in 0..3 {
            assert!(s.eigenvalues[i].abs() < 1e-7, "{:?}", s.eigenvalues);
        }
        assert!(s.eigenvalues[3] > 1.0);
    }

    #[test]
    fn cluster_graph_triangles_exact() {
        let (g, p) = disjoint_triangles();
        let (out, stats) = cluster_graph(&g, 3).unwrap();
        let (delta, _) = delta_partitions(out.sets(), p.sets()).unwrap();
        assert_eq!(delta, 0.0);
        assert!(stats.per_cluster_expansion.iter().all(|&e| e == 0.0));
        assert!(stats.lambda_k1.unwrap() > 1.0);
    }

    #[test]
    fn cluster_graph_k_equals_n() {
        let g = WeightedGraph::new(4, vec![(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        let (out, _) = cluster_graph(&g, 4).unwrap();
        assert_eq!(out.k(), 4);
        assert!(out.sets().iter().all(|s| s.len() == 1));
    }

    #[test]
    fn approximate_matrix_trivials() {
        let p = Partition::new(6, vec![set(&[0, 1, 2]), set(&[3, 4, 5])]).unwrap();
        let b = basis_matrix(&p);
        let x = b.dot(&b.t());
        let out = approximate_matrix(&x, 2).unwrap();
        let (delta, _) = delta_partitions(out.sets(), p.sets()).unwrap();
        assert_eq!(delta, 0.0);
        assert!(projector_distance(&x, &out) < 1e-7);

        // X = I with k = n: singletons, residual 0.
        let x = Array2::eye(4);
        let out = approximate_matrix(&x, 4).unwrap();
        assert!(out.sets().iter().all(|s| s.len() == 1));
        assert!(projector_distance(&x, &out) < 1e-9);
    }

    #[test]
    fn clique_union_exact() {
        // Normalized cliques: L equals the partition's complement projector.
        let p = Partition::new(7, vec![set(&[0, 1, 2]), set(&[3, 4, 5, 6])]).unwrap();
        let mut edges = Vec::new();
        for s in p.sets() {
            let w = 1.0 / s.len() as f64;
            for (i, &u) in s.members().iter().enumerate() {
                for &v in &s.members()[i + 1..] {
                    edges.push((u, v, w));
                }
            }
        }
        let g = WeightedGraph::new(7, edges).unwrap();
        let b = basis_matrix(&p);
        let perp = &Array2::<f64>::eye(7) - &b.dot(&b.t());
        let dev = linalg::spectral_norm(&(&g.laplacian() - &perp), DEFAULT_POWER_TOL);
        assert!(dev < 1e-12);

        let (out, achieved) = approximate_graph_by_cliques(&g, 2).unwrap();
        let (delta, _) = delta_partitions(out.sets(), p.sets()).unwrap();
        assert_eq!(delta, 0.0);
        assert!(achieved < 1e-7);
    }

    #[test]
    fn empty_graph_singletons() {
        let g = WeightedGraph::new(3, Vec::new()).unwrap();
        let (out, achieved) = approximate_graph_by_cliques(&g, 3).unwrap();
        assert_eq!(out.k(), 3);
        assert!(out.sets().iter().all(|s| s.len() == 1));
        assert!(achieved < 1e-9);
    }

    #[test]
    fn verifier_passes_on_exact_projector() {
        let p = Partition::new(6, vec![set(&[0, 1, 2]), set(&[3, 4, 5])]).unwrap();
        let b = basis_matrix(&p);
        let x = b.dot(&b.t());
        let y = Embedding::new(b.t().to_owned()).unwrap();
        let report = verify_reduction_feasibility(&x, &y, 0.0, Some(&p)).unwrap();
        assert!(report.all_pass(), "{report:?}");
        assert!(report.lambda_k1 > 1.0 - 1e-8);
        for e in report.cluster_expansions.unwrap() {
            assert!(e.abs() < 1e-12);
        }
    }

    #[test]
    fn verifier_uniform_matrix_k1() {
        let n = 5;
        let x = Array2::from_elem((n, n), 1.0 / n as f64);
        let p = Partition::new(n, vec![set(&[0, 1, 2, 3, 4])]).unwrap();
        let b = basis_matrix(&p);
        let y = Embedding::new(b.t().to_owned()).unwrap();
        let report = verify_reduction_feasibility(&x, &y, 0.0, None).unwrap();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn verifier_flags_bumped_entry() {
        let p = Partition::new(6, vec![set(&[0, 1, 2]), set(&[3, 4, 5])]).unwrap();
        let b = basis_matrix(&p);
        let mut x = b.dot(&b.t());
        x[[0, 4]] += 0.5;
        x[[4, 0]] += 0.5;
        let y = Embedding::new(b.t().to_owned()).unwrap();
        let report = verify_reduction_feasibility(&x, &y, 0.0, None).unwrap();
        let rows = report
            .checks
            .iter()
            .find(|c| c.name == "rows_sum_to_one")
            .unwrap();
        assert!(!rows.pass);
    }
}

//! Seeded generators for planted instances: embeddings with a measured
//! perturbation level against a known partition, and graphs assembled from
//! per-cluster building blocks plus sampled cross edges.
//!
//! Every generator is deterministic in its seed, and perturbation levels are
//! always measured post-hoc rather than assumed.

use ndarray::Array2;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::linalg::{self, DEFAULT_RANK_TOL};
use crate::partitions::{basis_matrix, NodeSet, Partition};
use crate::spectral::{residual, Embedding};

/// Partition of shuffled node ids into consecutive blocks of the given
/// sizes. Nodes beyond the sizes stay uncovered.
pub fn planted_partition(n: usize, sizes: &[usize], seed: u64) -> Result<Partition> {
    let total: usize = sizes.iter().sum();
    if total > n {
        return Err(Error::SizesExceedN { total, n });
    }
    let mut ids: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ids.shuffle(&mut rng);
    let mut sets = Vec::with_capacity(sizes.len());
    let mut offset = 0;
    for &s in sizes {
        sets.push(NodeSet::new(ids[offset..offset + s].to_vec()));
        offset += s;
    }
    Partition::new(n, sets)
}

/// Planted embedding: Y is the re-orthonormalized sum of the partition basis
/// and scaled seeded Gaussian noise, with the scale bisected until the
/// measured residual lands in [ε/2, 2ε]. Returns (Y, Γ*, measured ε).
pub fn planted_embedding(
    n: usize,
    sizes: &[usize],
    eps_target: f64,
    seed: u64,
) -> Result<(Embedding, Partition, f64)> {
    if !(0.0..1.0).contains(&eps_target) {
        return Err(Error::Numeric(format!(
            "eps_target {eps_target} outside [0, 1)"
        )));
    }
    let truth = planted_partition(n, sizes, seed)?;
    let base = basis_matrix(&truth).t().to_owned();
    if eps_target == 0.0 {
        let y = Embedding::new(base)?;
        let eps = residual(&y, &truth);
        return Ok((y, truth, eps));
    }

    let k = truth.k();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let noise: Array2<f64> = Array2::from_shape_fn((k, n), |_| StandardNormal.sample(&mut rng));

    let build = |nu: f64| -> Result<(Embedding, f64)> {
        let perturbed = &base + &(&noise * nu);
        let y = Embedding::new(linalg::orthonormal_row_basis(
            &perturbed,
            DEFAULT_RANK_TOL,
        )?)?;
        let eps = residual(&y, &truth);
        Ok((y, eps))
    };

    // Grow an upper bracket, then bisect the noise scale into the band.
    let mut hi = 1e-6;
    let mut f_hi = build(hi)?.1;
    let mut grow = 0;
    while f_hi < eps_target && grow < 80 {
        hi *= 2.0;
        f_hi = build(hi)?.1;
        grow += 1;
    }
    if f_hi < eps_target {
        return Err(Error::Numeric(format!(
            "noise calibration cannot reach eps_target {eps_target}"
        )));
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let (_, eps) = build(mid)?;
        if eps < eps_target {
            lo = mid;
        } else {
            hi = mid;
        }
        if eps >= eps_target / 2.0 && eps <= 2.0 * eps_target {
            let (y, eps) = build(mid)?;
            return Ok((y, truth, eps));
        }
    }
    Err(Error::Numeric(
        "noise calibration did not land in the target band".into(),
    ))
}

/// How each planted cluster is wired internally.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntraSpec {
    /// All pairs with weight 1/|T|; the Laplacian block is exactly the
    /// complement projector of the cluster.
    NormalizedClique,
    /// Random d-regular graph with edge weight 1/d; falls back to a clique
    /// when the cluster is too small to be d-regular.
    Expander { degree: usize },
}

/// Planted graph on Σ sizes shuffled nodes: one building block per cluster
/// plus `cross_count`-independent uniform cross edges carrying
/// `cross_weight` in total.
pub fn planted_graph(
    sizes: &[usize],
    intra: IntraSpec,
    cross_weight: f64,
    seed: u64,
) -> Result<(WeightedGraph, Partition)> {
    if sizes.contains(&0) {
        return Err(Error::EmptySet);
    }
    if cross_weight < 0.0 {
        return Err(Error::Numeric("cross_weight must be non-negative".into()));
    }
    let n: usize = sizes.iter().sum();
    let truth = planted_partition(n, sizes, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x517c_c1b7_2722_0a95);

    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    for set in truth.sets() {
        let members = set.members();
        match intra {
            IntraSpec::NormalizedClique => {
                clique_edges(members, &mut edges);
            }
            IntraSpec::Expander { degree } => {
                if !regular_edges(members, degree, &mut rng, &mut edges) {
                    clique_edges(members, &mut edges);
                }
            }
        }
    }

    if cross_weight > 0.0 && truth.k() > 1 {
        let owner: Vec<usize> = (0..n)
            .map(|u| truth.owner(u).expect("planted partitions cover all nodes"))
            .collect();
        let mut cross_pairs: Vec<(usize, usize)> = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if owner[u] != owner[v] {
                    cross_pairs.push((u, v));
                }
            }
        }
        let count = cross_pairs.len().min(2 * n).max(1);
        cross_pairs.shuffle(&mut rng);
        let w = cross_weight / count as f64;
        for &(u, v) in cross_pairs.iter().take(count) {
            edges.push((u, v, w));
        }
    }

    Ok((WeightedGraph::new(n, edges)?, truth))
}

fn clique_edges(members: &[usize], edges: &mut Vec<(usize, usize, f64)>) {
    let w = 1.0 / members.len() as f64;
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            edges.push((u, v, w));
        }
    }
}

/// Random d-regular simple graph on the given nodes by the pairing model
/// with rejection; false when the construction keeps failing (caller falls
/// back to a clique).
fn regular_edges(
    members: &[usize],
    degree: usize,
    rng: &mut ChaCha8Rng,
    edges: &mut Vec<(usize, usize, f64)>,
) -> bool {
    let m = members.len();
    if degree == 0 || degree >= m || !(m * degree).is_multiple_of(2) {
        return false;
    }
    'attempt: for _ in 0..200 {
        let mut stubs: Vec<usize> = (0..m * degree).map(|i| i / degree).collect();
        stubs.shuffle(rng);
        let mut seen = std::collections::HashSet::new();
        let mut local = Vec::with_capacity(m * degree / 2);
        for pair in stubs.chunks(2) {
            let (a, b) = (pair[0], pair[1]);
            if a == b {
                continue 'attempt;
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                continue 'attempt;
            }
            local.push(key);
        }
        let w = 1.0 / degree as f64;
        for (a, b) in local {
            edges.push((members[a], members[b], w));
        }
        return true;
    }
    false
}

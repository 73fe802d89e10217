//! The clustering pipeline: find a core set for one cluster at a time,
//! disjointify the cores, boost each core by re-rounding against the full
//! embedding, and unravel the boosted sets into the final partition.

use ndarray::{Array1, Array2};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{
    self, DEFAULT_POWER_TOL, DEFAULT_RANK_TOL,
};
use crate::partitions::{basis_matrix, NodeSet, OverlappingFamily, Partition};
use crate::rounding::round_vector;
use crate::unravel::unravel;

/// A k×n matrix with orthonormal rows: an embedding of n points in R^k.
#[derive(Debug, Clone)]
pub struct Embedding {
    y: Array2<f64>,
}

impl Embedding {
    /// Validates ∥YYᵀ − I_k∥₂ ≤ 1e-8 and entry finiteness.
    pub fn new(y: Array2<f64>) -> Result<Self> {
        if !linalg::all_finite(&y) {
            return Err(Error::NonFiniteEntries);
        }
        let k = y.nrows();
        let gram = y.dot(&y.t());
        let deviation = linalg::spectral_norm(&(&gram - &Array2::<f64>::eye(k)), DEFAULT_POWER_TOL);
        if deviation > 1e-8 {
            return Err(Error::InvalidEmbedding { deviation });
        }
        Ok(Embedding { y })
    }

    pub fn k(&self) -> usize {
        self.y.nrows()
    }

    pub fn n(&self) -> usize {
        self.y.ncols()
    }

    pub fn matrix(&self) -> &Array2<f64> {
        &self.y
    }
}

/// Snapshot of the pipeline state after an iteration: the r core sets and
/// the r boosted sets found so far.
#[derive(Debug, Clone)]
pub struct IterationState {
    pub r: usize,
    pub cores: Vec<NodeSet>,
    pub boosted: Vec<NodeSet>,
}

/// One cluster candidate from a matrix whose singular values are 0 or 1
/// (the caller's projection step guarantees this within 1e-6).
///
/// For every candidate center c the nodes are ordered by the relative
/// distance ∥Z_u − Z_c∥/∥Z_u∥ (zero-norm columns last); the trim level δ′ is
/// the smallest critical value max(1 − Σ∥Z∥², Σ∥Z − Z_c∥²) over all (c,
/// prefix) pairs. The accepted prefix is rounded through the top right
/// singular vector of the restricted matrix.
pub fn find_cluster(z: &Array2<f64>) -> Result<NodeSet> {
    let n = z.ncols();
    let sq_norms = linalg::column_sq_norms(z);
    if sq_norms.iter().all(|&x| x == 0.0) {
        return Err(Error::NoClusterFound);
    }
    // Column Gram matrix for distance evaluations:
    // ∥Z_u − Z_c∥² = ∥Z_u∥² + ∥Z_c∥² − 2⟨Z_u, Z_c⟩.
    let gram = z.t().dot(z);

    // Per-center minimum critical value, reduced deterministically to the
    // smallest (δ′, c). The scan over centers is pure and order-free.
    let best = (0..n)
        .into_par_iter()
        .map(|c| {
            let order = center_order(&sq_norms, &gram, c);
            let mut p = 0.0;
            let mut d = 0.0;
            let mut best_delta = f64::INFINITY;
            for &u in &order {
                p += sq_norms[u];
                d += dist_sq(&sq_norms, &gram, u, c);
                let critical = (1.0 - p).max(d);
                if critical < best_delta {
                    best_delta = critical;
                }
            }
            (best_delta, c)
        })
        .reduce(
            || (f64::INFINITY, usize::MAX),
            |a, b| {
                if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );

    let (delta_prime, center) = best;
    if delta_prime.is_nan() || delta_prime > 1.0 {
        return Err(Error::NoClusterFound);
    }

    // Re-derive the accepted prefix for the winning center: the smallest m
    // with Σ_{i≤m} ∥Z_{π(i)}∥² ≥ 1 − δ′.
    let order = center_order(&sq_norms, &gram, center);
    let mut p = 0.0;
    let mut m = 0;
    for (i, &u) in order.iter().enumerate() {
        p += sq_norms[u];
        if p >= 1.0 - delta_prime {
            m = i + 1;
            break;
        }
    }
    if m == 0 {
        // Only reachable through last-ulp misalignment between the two
        // passes; take every column that carries mass.
        m = order.iter().filter(|&&u| sq_norms[u] > 0.0).count().max(1);
    }
    let prefix: Vec<usize> = order[..m].to_vec();

    // Top right singular vector of the restriction, rounded inside the
    // prefix coordinates and mapped back to node ids.
    let restricted = linalg::select_columns(z, &prefix);
    let (_, _, right) = linalg::top_singular_triple(&restricted, None, DEFAULT_POWER_TOL)?;
    let local = round_vector(&right)?;
    Ok(local.members().iter().map(|&i| prefix[i]).collect())
}

fn dist_sq(sq_norms: &[f64], gram: &Array2<f64>, u: usize, c: usize) -> f64 {
    (sq_norms[u] + sq_norms[c] - 2.0 * gram[[u, c]]).max(0.0)
}

fn center_order(sq_norms: &[f64], gram: &Array2<f64>, c: usize) -> Vec<usize> {
    let n = sq_norms.len();
    let ratio = |u: usize| -> f64 {
        if sq_norms[u] == 0.0 {
            f64::INFINITY
        } else {
            (dist_sq(sq_norms, gram, u, c) / sq_norms[u]).sqrt()
        }
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| ratio(a).total_cmp(&ratio(b)).then(a.cmp(&b)));
    order
}

/// Improve a core set: take the top left singular vector p of the columns
/// restricted to S and re-round Yᵀp over all n coordinates, which recaptures
/// the part of the true cluster that S missed.
pub fn boost(y: &Embedding, s: &NodeSet) -> Result<NodeSet> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let restricted = linalg::select_columns(y.matrix(), s.members());
    let (_, left, _) = linalg::top_singular_triple(&restricted, None, DEFAULT_POWER_TOL)?;
    let q = y.matrix().t().dot(&left);
    round_vector(&q)
}

/// ∥YΓ^⊥∥₂²: the worst-direction within-cluster variance of the embedding
/// under the partition, computed as ∥Y − (YΓ)Γᵀ∥₂².
pub fn residual(y: &Embedding, partition: &Partition) -> f64 {
    residual_of_sets(y, partition.sets(), partition.n())
}

/// Residual against an arbitrary list of disjoint sets.
pub fn residual_of_sets(y: &Embedding, sets: &[NodeSet], n: usize) -> f64 {
    if sets.is_empty() {
        let s = linalg::spectral_norm(y.matrix(), DEFAULT_POWER_TOL);
        return s * s;
    }
    let partition = Partition::new(n, sets.to_vec()).expect("disjoint sets");
    let b = basis_matrix(&partition);
    let yb = y.matrix().dot(&b);
    let diff = y.matrix() - &yb.dot(&b.t());
    let s = linalg::spectral_norm(&diff, DEFAULT_POWER_TOL);
    s * s
}

/// Full pipeline: returns the final partition of exactly rank(Y) disjoint
/// non-empty sets.
pub fn spectral_clustering(y: &Embedding) -> Result<Partition> {
    Ok(spectral_clustering_trace(y)?.0)
}

/// Pipeline with per-iteration state snapshots for inspection.
pub fn spectral_clustering_trace(y: &Embedding) -> Result<(Partition, Vec<IterationState>)> {
    let n = y.n();
    let rank = linalg::numerical_row_rank(y.matrix(), DEFAULT_RANK_TOL);
    let mut cores: Vec<NodeSet> = Vec::with_capacity(rank);
    let mut boosted: Vec<NodeSet> = Vec::with_capacity(rank);
    let mut trace = Vec::with_capacity(rank);

    for r in 1..=rank {
        let z_owned;
        let z: &Array2<f64> = if r == 1 {
            y.matrix()
        } else {
            let prior = OverlappingFamily::new(n, boosted.clone())?;
            let (disjoint, _) = unravel(&prior).map_err(|e| e.at_iteration(r))?;
            let b = basis_matrix(&disjoint);
            let centers = y.matrix().dot(&b); // k×(r−1) cluster-center directions
            let center_rank = linalg::numerical_row_rank(&centers.t().to_owned(), DEFAULT_RANK_TOL);
            if center_rank < disjoint.k() {
                return Err(Error::DegenerateCenters { iteration: r });
            }
            let perp = linalg::projector_complement(&centers);
            let projected = perp.dot(y.matrix());
            let basis = linalg::orthonormal_row_basis(&projected, DEFAULT_RANK_TOL)
                .map_err(|e| e.at_iteration(r))?;
            if basis.nrows() != rank - disjoint.k() {
                return Err(Error::Numeric(format!(
                    "projected embedding has rank {} at iteration {r}, expected {}",
                    basis.nrows(),
                    rank - disjoint.k()
                )));
            }
            z_owned = basis;
            &z_owned
        };

        let core = find_cluster(z).map_err(|e| e.at_iteration(r))?;
        cores.push(core);

        let disjoint_cores = {
            let fam = OverlappingFamily::new(n, cores.clone())?;
            unravel(&fam).map_err(|e| e.at_iteration(r))?.0
        };
        let trimmed_core = disjoint_cores.sets()[r - 1].clone();
        let boost_set = boost(y, &trimmed_core).map_err(|e| e.at_iteration(r))?;
        boosted.push(boost_set);

        trace.push(IterationState {
            r,
            cores: cores.clone(),
            boosted: boosted.clone(),
        });
    }

    let fam = OverlappingFamily::new(n, boosted)?;
    let (partition, _) = unravel(&fam).map_err(|e| e.at_iteration(rank))?;
    Ok((partition, trace))
}

/// Optional post-pass: assign every uncovered node to the cluster whose
/// center is nearest in the embedding (ties toward the smaller cluster
/// index). Relative cluster sizes are not preserved.
pub fn cover_all(y: &Embedding, partition: &Partition) -> Result<Partition> {
    let uncovered = partition.uncovered();
    if uncovered.is_empty() {
        return Ok(partition.clone());
    }
    if partition.k() == 0 {
        return Err(Error::EmptySet);
    }
    let k = y.k();
    let centers: Vec<Array1<f64>> = partition
        .sets()
        .iter()
        .map(|s| {
            let mut c = Array1::zeros(k);
            for &u in s.members() {
                c += &y.matrix().column(u);
            }
            c / s.len() as f64
        })
        .collect();
    let mut sets: Vec<Vec<usize>> = partition
        .sets()
        .iter()
        .map(|s| s.members().to_vec())
        .collect();
    for u in uncovered {
        let col = y.matrix().column(u);
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (i, c) in centers.iter().enumerate() {
            let diff = &col.to_owned() - c;
            let d = diff.dot(&diff);
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        sets[best].push(u);
    }
    Partition::new(partition.n(), sets.into_iter().map(NodeSet::new).collect())
}

//! Partition data model, basis matrices, and the Δ similarity measures on
//! vectors, sets, and partitions.
//!
//! Node ids are dense integers 0..n−1; external labels are mapped at the I/O
//! boundary.

use ndarray::{Array1, Array2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set of node ids, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeSet {
    members: Vec<usize>,
}

impl NodeSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        NodeSet { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, node: usize) -> bool {
        self.members.binary_search(&node).is_ok()
    }

    pub fn intersection_size(&self, other: &NodeSet) -> usize {
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < self.members.len() && j < other.members.len() {
            match self.members[i].cmp(&other.members[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    pub fn union_size(&self, other: &NodeSet) -> usize {
        self.len() + other.len() - self.intersection_size(other)
    }

    /// 0/1 indicator vector in R^n.
    pub fn indicator(&self, n: usize) -> Array1<f64> {
        let mut v = Array1::zeros(n);
        for &u in &self.members {
            v[u] = 1.0;
        }
        v
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        NodeSet::new(iter.into_iter().collect())
    }
}

fn check_sets(n: usize, sets: &[NodeSet], require_disjoint: bool) -> Result<()> {
    let mut seen = vec![false; n];
    for set in sets {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        for &u in set.members() {
            if u >= n {
                return Err(Error::NodeOutOfRange { node: u, n });
            }
            if require_disjoint {
                if seen[u] {
                    return Err(Error::OverlapDetected { node: u });
                }
                seen[u] = true;
            }
        }
    }
    Ok(())
}

/// An ordered list of disjoint non-empty node subsets of {0..n−1}. Nodes may
/// be left uncovered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    n: usize,
    sets: Vec<NodeSet>,
}

impl Partition {
    pub fn new(n: usize, sets: Vec<NodeSet>) -> Result<Self> {
        check_sets(n, &sets, true)?;
        Ok(Partition { n, sets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[NodeSet] {
        &self.sets
    }

    pub fn into_sets(self) -> Vec<NodeSet> {
        self.sets
    }

    /// True when every node belongs to some set.
    pub fn covers_all(&self) -> bool {
        self.sets.iter().map(NodeSet::len).sum::<usize>() == self.n
    }

    /// Set index that contains `node`, if any.
    pub fn owner(&self, node: usize) -> Option<usize> {
        self.sets.iter().position(|s| s.contains(node))
    }

    pub fn uncovered(&self) -> Vec<usize> {
        let mut covered = vec![false; self.n];
        for s in &self.sets {
            for &u in s.members() {
                covered[u] = true;
            }
        }
        (0..self.n).filter(|&u| !covered[u]).collect()
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            sets: Vec<Vec<usize>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        Partition::new(raw.n, raw.sets.into_iter().map(NodeSet::new).collect())
            .map_err(serde::de::Error::custom)
    }
}

/// An ordered list of non-empty node subsets; disjointness is not required.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlappingFamily {
    n: usize,
    sets: Vec<NodeSet>,
}

impl OverlappingFamily {
    pub fn new(n: usize, sets: Vec<NodeSet>) -> Result<Self> {
        check_sets(n, &sets, false)?;
        Ok(OverlappingFamily { n, sets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[NodeSet] {
        &self.sets
    }
}

impl From<Partition> for OverlappingFamily {
    fn from(p: Partition) -> Self {
        OverlappingFamily {
            n: p.n,
            sets: p.sets,
        }
    }
}

/// Normalized incidence matrix of a partition: n×k with column i equal to
/// the indicator of set i scaled by 1/√|set i|. Columns are orthonormal
/// because the sets are disjoint.
pub fn basis_matrix(partition: &Partition) -> Array2<f64> {
    let n = partition.n();
    let k = partition.k();
    let mut b = Array2::zeros((n, k));
    for (j, set) in partition.sets().iter().enumerate() {
        let w = 1.0 / (set.len() as f64).sqrt();
        for &u in set.members() {
            b[[u, j]] = w;
        }
    }
    b
}

/// Δ(p, q) = 1 − ⟨p̂, q̂⟩² on non-zero vectors; symmetric, in [0, 1].
pub fn delta_vectors(p: &Array1<f64>, q: &Array1<f64>) -> Result<f64> {
    let pn = p.dot(p).sqrt();
    let qn = q.dot(q).sqrt();
    if pn == 0.0 || qn == 0.0 {
        return Err(Error::ZeroVector);
    }
    let c = p.dot(q) / (pn * qn);
    Ok((1.0 - c * c).clamp(0.0, 1.0))
}

/// Δ(A, B) = 1 − |A∩B|²/(|A||B|), evaluated exactly from set sizes.
pub fn delta_sets(a: &NodeSet, b: &NodeSet) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let inter = a.intersection_size(b) as f64;
    Ok(1.0 - (inter * inter) / (a.len() as f64 * b.len() as f64))
}

/// |AΔB| / |A∪B|.
pub fn jaccard_symmetric_difference(a: &NodeSet, b: &NodeSet) -> Result<f64> {
    let union = a.union_size(b);
    if union == 0 {
        return Err(Error::EmptyUnion);
    }
    let inter = a.intersection_size(b);
    let sym_diff = a.len() + b.len() - 2 * inter;
    Ok(sym_diff as f64 / union as f64)
}

/// Kuhn augmenting-path test: can every left index be matched into distinct
/// right indices along `allowed`?
fn perfect_matching_exists(allowed: &[Vec<bool>]) -> bool {
    let k = allowed.len();
    let mut matched_right: Vec<Option<usize>> = vec![None; k];
    fn try_assign(
        u: usize,
        allowed: &[Vec<bool>],
        visited: &mut [bool],
        matched_right: &mut [Option<usize>],
    ) -> bool {
        for v in 0..allowed.len() {
            if allowed[u][v] && !visited[v] {
                visited[v] = true;
                if matched_right[v].is_none()
                    || try_assign(matched_right[v].unwrap(), allowed, visited, matched_right)
                {
                    matched_right[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    for u in 0..k {
        let mut visited = vec![false; k];
        if !try_assign(u, allowed, &mut visited, &mut matched_right) {
            return false;
        }
    }
    true
}

/// Bottleneck partition similarity: min over bijections π of
/// max_S Δ(S, π(S)), with an achieving bijection (as indices into `b`).
///
/// Binary search over the sorted k² pairwise Δ values; feasibility at a
/// threshold is a perfect-matching test on the pairs at or below it. Ties are
/// broken toward the lexicographically smallest π.
pub fn delta_partitions(a: &[NodeSet], b: &[NodeSet]) -> Result<(f64, Vec<usize>)> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let k = a.len();
    if k == 0 {
        return Ok((0.0, Vec::new()));
    }
    let mut cost = vec![vec![0.0f64; k]; k];
    let mut thresholds = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            cost[i][j] = delta_sets(&a[i], &b[j])?;
            thresholds.push(cost[i][j]);
        }
    }
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();

    let allowed_at = |t: f64| -> Vec<Vec<bool>> {
        (0..k)
            .map(|i| (0..k).map(|j| cost[i][j] <= t).collect())
            .collect()
    };

    let (mut lo, mut hi) = (0, thresholds.len() - 1);
    if !perfect_matching_exists(&allowed_at(thresholds[hi])) {
        // Cannot happen: every pair is allowed at the max threshold.
        unreachable!("full bipartite graph always has a perfect matching");
    }
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect_matching_exists(&allowed_at(thresholds[mid])) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let t = thresholds[lo];

    // Lexicographically smallest achieving bijection: fix rows in order,
    // always trying the smallest column that keeps the rest matchable.
    let allowed = allowed_at(t);
    let mut assignment = vec![usize::MAX; k];
    let mut used = vec![false; k];
    for i in 0..k {
        let mut placed = false;
        for j in 0..k {
            if used[j] || !allowed[i][j] {
                continue;
            }
            // Tentatively assign and test the remainder.
            let reduced: Vec<Vec<bool>> = allowed[(i + 1)..]
                .iter()
                .map(|row| {
                    (0..k)
                        .map(|c| row[c] && !used[c] && c != j)
                        .collect()
                })
                .collect();
            if rectangular_matchable(&reduced, k) {
                assignment[i] = j;
                used[j] = true;
                placed = true;
                break;
            }
        }
        if !placed {
            unreachable!("threshold was verified feasible");
        }
    }
    Ok((t, assignment))
}

/// Matching test for a rows×k 0/1 matrix where every row must be matched.
fn rectangular_matchable(allowed: &[Vec<bool>], k: usize) -> bool {
    let mut matched_right: Vec<Option<usize>> = vec![None; k];
    fn try_assign(
        u: usize,
        allowed: &[Vec<bool>],
        visited: &mut [bool],
        matched_right: &mut [Option<usize>],
    ) -> bool {
        for v in 0..visited.len() {
            if allowed[u][v] && !visited[v] {
                visited[v] = true;
                if matched_right[v].is_none()
                    || try_assign(matched_right[v].unwrap(), allowed, visited, matched_right)
                {
                    matched_right[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    for u in 0..allowed.len() {
        let mut visited = vec![false; k];
        if !try_assign(u, allowed, &mut visited, &mut matched_right) {
            return false;
        }
    }
    true
}

/// Greedy overlap matching π₁(S) = argmax_T |S∩T|/|T|, verified to be a
/// bijection whose inverse is the reverse greedy map π₂. Valid in the
/// Δ < 1/2 closeness regime; outside it `NotBijective` is signaled and the
/// caller falls back to `delta_partitions`.
pub fn greedy_match(a: &Partition, b: &Partition) -> Result<Vec<usize>> {
    if a.k() != b.k() {
        return Err(Error::SizeMismatch {
            left: a.k(),
            right: b.k(),
        });
    }
    let k = a.k();
    let argmax = |scores: Vec<f64>| -> usize {
        let mut best = 0;
        for (i, &s) in scores.iter().enumerate() {
            if s > scores[best] {
                best = i;
            }
        }
        best
    };
    let pi1: Vec<usize> = a
        .sets()
        .iter()
        .map(|s| {
            argmax(
                b.sets()
                    .iter()
                    .map(|t| s.intersection_size(t) as f64 / t.len() as f64)
                    .collect(),
            )
        })
        .collect();
    let pi2: Vec<usize> = b
        .sets()
        .iter()
        .map(|t| {
            argmax(
                a.sets()
                    .iter()
                    .map(|s| s.intersection_size(t) as f64 / s.len() as f64)
                    .collect(),
            )
        })
        .collect();

    let mut hit = vec![false; k];
    for &j in &pi1 {
        if hit[j] {
            return Err(Error::NotBijective);
        }
        hit[j] = true;
    }
    for (i, &j) in pi1.iter().enumerate() {
        if pi2[j] != i {
            return Err(Error::NotBijective);
        }
    }
    Ok(pi1)
}

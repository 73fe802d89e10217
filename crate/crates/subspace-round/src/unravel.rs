//! Disjointify a family of possibly-overlapping near-clusters through a
//! bipartite matching: each set S demands a block of ⌈(1−δ)|S|⌉ distinct
//! representatives drawn from S itself, and δ is the smallest grid value for
//! which every block can be covered.

use crate::error::{Error, Result};
use crate::partitions::{NodeSet, OverlappingFamily, Partition};

/// The finite set of trim values at which some block size ⌈(1−δ)|S|⌉
/// changes: {1 − m/|S| : S ∈ Γ, 1 ≤ m ≤ |S|} ∪ {0}, ascending.
pub fn candidate_deltas(family: &OverlappingFamily) -> Vec<f64> {
    let mut grid = vec![0.0];
    for set in family.sets() {
        let size = set.len() as f64;
        for m in 1..=set.len() {
            grid.push(1.0 - m as f64 / size);
        }
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// ⌈(1−δ)·size⌉, computed as size − ⌊δ·size⌋ with a guard so that grid
/// values δ = 1 − m/size land exactly on the intended integer despite
/// rounding in the δ representation. Trims beyond the grid behave as the
/// δ → 1⁻ limit: every block keeps at least one slot.
fn block_capacity(size: usize, delta: f64) -> usize {
    let trimmed = (delta * size as f64 + 1e-9).floor() as usize;
    size.saturating_sub(trimmed).max(1)
}

/// Maximum matching of left nodes into capacitated right blocks by
/// augmenting paths (Kuhn on the collapsed graph, which is equivalent to
/// Hopcroft–Karp on the expanded one at this scale). Returns per-block
/// member lists; the matching covers every block iff each list reaches its
/// capacity.
fn capacitated_matching(
    n: usize,
    sets: &[NodeSet],
    caps: &[usize],
) -> Vec<Vec<usize>> {
    let k = sets.len();
    // blocks_of[u] = blocks that accept node u, ascending.
    let mut blocks_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (j, set) in sets.iter().enumerate() {
        for &u in set.members() {
            blocks_of[u].push(j);
        }
    }

    let mut matched_block: Vec<Option<usize>> = vec![None; n];
    let mut assigned: Vec<Vec<usize>> = vec![Vec::new(); k];

    fn try_assign(
        u: usize,
        blocks_of: &[Vec<usize>],
        caps: &[usize],
        visited: &mut [bool],
        matched_block: &mut [Option<usize>],
        assigned: &mut [Vec<usize>],
    ) -> bool {
        for &j in &blocks_of[u] {
            if visited[j] {
                continue;
            }
            visited[j] = true;
            if assigned[j].len() < caps[j] {
                assigned[j].push(u);
                matched_block[u] = Some(j);
                return true;
            }
            // Block full: try to re-route one of its current members.
            for idx in 0..assigned[j].len() {
                let w = assigned[j][idx];
                if try_assign(w, blocks_of, caps, visited, matched_block, assigned) {
                    assigned[j][idx] = u;
                    matched_block[u] = Some(j);
                    return true;
                }
            }
        }
        false
    }

    for u in 0..n {
        if blocks_of[u].is_empty() {
            continue;
        }
        let mut visited = vec![false; k];
        try_assign(
            u,
            &blocks_of,
            caps,
            &mut visited,
            &mut matched_block,
            &mut assigned,
        );
    }
    assigned
}

/// Covering matching at a fixed trim value, or None when infeasible.
pub fn unravel_at(family: &OverlappingFamily, delta: f64) -> Result<Option<Partition>> {
    let caps: Vec<usize> = family
        .sets()
        .iter()
        .map(|s| block_capacity(s.len(), delta))
        .collect();
    let assigned = capacitated_matching(family.n(), family.sets(), &caps);
    if assigned
        .iter()
        .zip(&caps)
        .any(|(members, &cap)| members.len() < cap)
    {
        return Ok(None);
    }
    let sets: Vec<NodeSet> = assigned.into_iter().map(NodeSet::new).collect();
    Ok(Some(Partition::new(family.n(), sets)?))
}

/// Disjointify the family: returns disjoint subsets Û_S ⊆ S with
/// |Û_S| ≥ ⌈(1−δ)|S|⌉, where δ is the smallest candidate value admitting a
/// covering matching. Feasibility is monotone in δ, so a binary search over
/// the grid finds the minimum.
pub fn unravel(family: &OverlappingFamily) -> Result<(Partition, f64)> {
    if family.k() == 0 {
        return Ok((Partition::new(family.n(), Vec::new())?, 0.0));
    }
    let grid = candidate_deltas(family);
    let (mut lo, mut hi) = (0usize, grid.len() - 1);
    if unravel_at(family, grid[hi])?.is_none() {
        return Err(Error::Infeasible);
    }
    while lo < hi {
        let mid = (lo + hi) / 2;
        if unravel_at(family, grid[mid])?.is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let delta = grid[lo];
    let partition = unravel_at(family, delta)?.expect("probed feasible during search");
    Ok((partition, delta))
}

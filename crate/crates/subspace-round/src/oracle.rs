//! Independent brute-force routes used to cross-check the production
//! algorithms. Nothing here feeds back into the algorithms themselves; the
//! verify suites and the test code compare against these.

use ndarray::{Array1, Array2};

use crate::partitions::NodeSet;

/// Eigenvalues of a symmetric matrix, descending, by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(m: &Array2<f64>) -> Vec<f64> {
    jacobi(m).0
}

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns (eigenvalues descending, matrix whose columns are eigenvectors).
pub fn jacobi(m: &Array2<f64>) -> (Vec<f64>, Array2<f64>) {
    let n = m.nrows();
    let mut a = m.clone();
    let mut v: Array2<f64> = Array2::eye(n);
    let off = |a: &Array2<f64>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += a[[i, j]] * a[[i, j]];
            }
        }
        s
    };
    let scale = m.iter().fold(0.0f64, |acc, x| acc.max(x.abs())).max(1e-300);
    for _sweep in 0..100 {
        if off(&a).sqrt() <= 1e-14 * scale * n as f64 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[[p, q]];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[[q, q]] - a[[p, p]]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[[k, p]];
                    let akq = a[[k, q]];
                    a[[k, p]] = c * akp - s * akq;
                    a[[k, q]] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[[p, k]];
                    let aqk = a[[q, k]];
                    a[[p, k]] = c * apk - s * aqk;
                    a[[q, k]] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[[k, p]];
                    let vkq = v[[k, q]];
                    v[[k, p]] = c * vkp - s * vkq;
                    v[[k, q]] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[[j, j]].total_cmp(&a[[i, i]]));
    let values: Vec<f64> = order.iter().map(|&i| a[[i, i]]).collect();
    let mut vectors = Array2::zeros((n, n));
    for (col, &i) in order.iter().enumerate() {
        for k in 0..n {
            vectors[[k, col]] = v[[k, i]];
        }
    }
    (values, vectors)
}

/// Singular values of an arbitrary matrix, descending, via Jacobi on the
/// smaller Gram matrix.
pub fn singular_values(m: &Array2<f64>) -> Vec<f64> {
    let gram = if m.nrows() <= m.ncols() {
        m.dot(&m.t())
    } else {
        m.t().dot(m)
    };
    jacobi_eigenvalues(&gram)
        .into_iter()
        .map(|x| x.max(0.0).sqrt())
        .collect()
}

/// Spectral norm through the Jacobi route.
pub fn spectral_norm(m: &Array2<f64>) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Projector onto the row space of M computed from the Jacobi
/// eigendecomposition of MᵀM (rank threshold 1e-9 relative).
pub fn row_space_projector(m: &Array2<f64>) -> Array2<f64> {
    let gram = m.t().dot(m);
    let (values, vectors) = jacobi(&gram);
    let cols = m.ncols();
    let top = values.first().copied().unwrap_or(0.0).max(0.0);
    let mut p = Array2::zeros((cols, cols));
    for (i, &lam) in values.iter().enumerate() {
        if lam > 1e-14 * top.max(1e-300) {
            let v = vectors.column(i);
            for r in 0..cols {
                for c in 0..cols {
                    p[[r, c]] += v[r] * v[c];
                }
            }
        }
    }
    p
}

/// Brute-force threshold rounding straight from the defining family
/// F = {{u | s·q_u ≥ s·q_v} | v ∈ V, s ∈ ±1}: enumerate every member of F
/// and return the best score together with the best set under the
/// (score desc, |S| asc, lexicographic) order.
pub fn brute_force_round(q: &Array1<f64>) -> (f64, Vec<usize>) {
    let n = q.len();
    let mut best: Option<(f64, Vec<usize>)> = None;
    for v in 0..n {
        for s in [1.0f64, -1.0] {
            let t = q[v];
            let members: Vec<usize> = (0..n).filter(|&u| s * q[u] >= s * t).collect();
            if members.is_empty() {
                continue;
            }
            let sum: f64 = members.iter().map(|&u| q[u]).sum();
            let score = sum.abs() / (members.len() as f64).sqrt();
            let better = match &best {
                None => true,
                Some((bs, bm)) => {
                    score > *bs
                        || (score == *bs
                            && (members.len() < bm.len()
                                || (members.len() == bm.len() && members < *bm)))
                }
            };
            if better {
                best = Some((score, members));
            }
        }
    }
    best.expect("non-zero vector always yields a candidate")
}

/// Exhaustive bottleneck partition similarity: minimum over all k!
/// bijections of the max pairwise set dissimilarity. Usable for k ≤ 8.
pub fn exhaustive_delta_partitions(a: &[NodeSet], b: &[NodeSet]) -> f64 {
    let k = a.len();
    assert_eq!(k, b.len());
    let mut cost = vec![vec![0.0f64; k]; k];
    for (i, s) in a.iter().enumerate() {
        for (j, t) in b.iter().enumerate() {
            cost[i][j] = crate::partitions::delta_sets(s, t).unwrap();
        }
    }
    let mut perm: Vec<usize> = (0..k).collect();
    let mut best = f64::INFINITY;
    permute(&mut perm, 0, &mut |p| {
        let worst = (0..k).map(|i| cost[i][p[i]]).fold(0.0f64, f64::max);
        if worst < best {
            best = worst;
        }
    });
    best
}

fn permute(items: &mut Vec<usize>, start: usize, visit: &mut impl FnMut(&[usize])) {
    if start == items.len() {
        visit(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute(items, start + 1, visit);
        items.swap(start, i);
    }
}

/// Maximum bipartite matching size by bitmask dynamic programming over the
/// left side (|L| ≤ ~20). `adj[u]` lists right blocks; `caps` are block
/// capacities. Exhaustive, for cross-checking the production matcher.
pub fn exhaustive_matching_size(adj: &[Vec<usize>], caps: &[usize]) -> usize {
    // Depth-first over left nodes with memo on (index, remaining caps) is
    // overkill at this scale; plain recursion with pruning suffices.
    fn go(u: usize, adj: &[Vec<usize>], remaining: &mut Vec<usize>) -> usize {
        if u == adj.len() {
            return 0;
        }
        let mut best = go(u + 1, adj, remaining);
        for &b in &adj[u] {
            if remaining[b] > 0 {
                remaining[b] -= 1;
                best = best.max(1 + go(u + 1, adj, remaining));
                remaining[b] += 1;
            }
        }
        best
    }
    let mut remaining = caps.to_vec();
    go(0, adj, &mut remaining)
}

/// sin of the largest principal angle between the column spaces of two
/// orthonormal matrices, by direct angle optimization over a grid on the
/// coefficient sphere (desk scale: k ≤ 3).
pub fn grid_sin_largest_angle(a: &Array2<f64>, b: &Array2<f64>, steps: usize) -> f64 {
    let k = a.ncols();
    assert!(k <= 3, "grid search only supports k <= 3");
    let b_gram = b.t().dot(a); // k_b × k_a, used to project A p onto span(B)
    let mut min_cos2 = f64::INFINITY;
    let mut eval = |p: &[f64]| {
        let p = Array1::from_vec(p.to_vec());
        let norm2 = p.dot(&p);
        if norm2 < 1e-12 {
            return;
        }
        // ||B^proj A p||^2 = ||Bᵀ A p||^2 since B is orthonormal.
        let proj = b_gram.dot(&p);
        let cos2 = proj.dot(&proj) / norm2;
        if cos2 < min_cos2 {
            min_cos2 = cos2;
        }
    };
    match k {
        1 => eval(&[1.0]),
        2 => {
            for i in 0..steps {
                let t = std::f64::consts::PI * i as f64 / steps as f64;
                eval(&[t.cos(), t.sin()]);
            }
        }
        _ => {
            for i in 0..steps {
                let t = std::f64::consts::PI * i as f64 / steps as f64;
                for j in 0..steps {
                    let u = std::f64::consts::PI * j as f64 / steps as f64;
                    eval(&[t.sin() * u.cos(), t.sin() * u.sin(), t.cos()]);
                }
            }
        }
    }
    (1.0 - min_cos2.min(1.0)).max(0.0).sqrt()
}

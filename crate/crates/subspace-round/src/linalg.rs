//! Dense real linear algebra used by every other module: products, projectors,
//! power-iteration eigen/singular solvers, spectral norms.
//!
//! All solvers are deterministic: fixed starting vectors, a fixed iteration
//! cap, and a sign convention (first nonzero coordinate of a returned vector
//! is positive).

use ndarray::{Array1, Array2, Axis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Hard cap on power-iteration steps; exceeding it signals failure for
/// eigenpair extraction rather than returning garbage.
pub const MAX_POWER_ITERATIONS: usize = 100_000;

/// Default relative tolerance for Rayleigh-quotient stagnation.
pub const DEFAULT_POWER_TOL: f64 = 1e-10;

/// Default relative threshold below which singular values count as zero.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Largest eigenpairs of a symmetric matrix, eigenvalues sorted descending,
/// eigenvectors orthonormal.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub values: Vec<f64>,
    pub vectors: Vec<Array1<f64>>,
}

pub fn frobenius_norm(m: &Array2<f64>) -> f64 {
    m.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn all_finite(m: &Array2<f64>) -> bool {
    m.iter().all(|x| x.is_finite())
}

/// Flip the sign so the first coordinate with non-negligible magnitude is
/// positive. Keeps returned vectors reproducible across runs.
pub fn canonical_sign(v: &mut Array1<f64>) {
    let scale = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if scale == 0.0 {
        return;
    }
    for &x in v.iter() {
        if x.abs() > 1e-9 * scale {
            if x < 0.0 {
                v.mapv_inplace(|y| -y);
            }
            return;
        }
    }
}

fn normalize(v: &mut Array1<f64>) -> f64 {
    let norm = v.dot(v).sqrt();
    if norm > 0.0 {
        v.mapv_inplace(|x| x / norm);
    }
    norm
}

/// Deterministic fallback start vector for when the all-ones direction lies
/// in the kernel.
fn fallback_start(dim: usize, attempt: u64) -> Array1<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + attempt);
    Array1::from_iter((0..dim).map(|_| rng.gen_range(-1.0..1.0)))
}

/// Top singular triple (σ₁, left, right) of a non-zero matrix by power
/// iteration on the right Gram operator v ← Mᵀ(Mv).
///
/// Deterministic given `init`; without it the all-ones direction is used,
/// falling back to a fixed-seed pseudo-random vector if that lies in the
/// kernel. The sign convention is applied to the right vector and the left
/// vector is derived as unit(M·right).
pub fn top_singular_triple(
    m: &Array2<f64>,
    init: Option<&Array1<f64>>,
    tol: f64,
) -> Result<(f64, Array1<f64>, Array1<f64>)> {
    let fro = frobenius_norm(m);
    if fro == 0.0 {
        return Err(Error::ZeroMatrix);
    }
    let cols = m.ncols();

    let iterate = |start: Array1<f64>| -> (f64, Array1<f64>) {
        let mut v = start;
        let floor = 1e-13 * fro * fro;
        let mut rho = 0.0;
        let mut rho_prev = f64::NAN;
        for attempt in 0..5u64 {
            if m.dot(&v).dot(&m.dot(&v)) > 0.0 {
                break;
            }
            v = fallback_start(cols, attempt);
            normalize(&mut v);
        }
        for _ in 0..MAX_POWER_ITERATIONS {
            let mv = m.dot(&v);
            rho = mv.dot(&mv);
            let mut next = m.t().dot(&mv);
            if normalize(&mut next) == 0.0 {
                // Numerically in the kernel despite a non-zero matrix.
                v = fallback_start(cols, 7);
                normalize(&mut v);
                rho_prev = f64::NAN;
                continue;
            }
            v = next;
            if !rho_prev.is_nan() && (rho - rho_prev).abs() <= tol * rho.abs().max(floor) {
                break;
            }
            rho_prev = rho;
        }
        (rho, v)
    };

    let (rho, v) = match init {
        Some(v0) => {
            let mut v = v0.clone();
            if normalize(&mut v) == 0.0 {
                return Err(Error::ZeroVector);
            }
            iterate(v)
        }
        None => {
            // The all-ones start can be exactly orthogonal to the dominant
            // singular direction on the partition-projector algebra this
            // library runs on (for a covering partition, ⟨1, w⟩ = ⟨1, Γ^proj
            // w⟩ = 0 for every top eigenvector w of Y^T Y − Γ^proj), which
            // strands the iteration on a secondary value. A second run from
            // the seeded direction has generic overlap; keep the larger.
            let mut ones = Array1::ones(cols);
            normalize(&mut ones);
            let first = iterate(ones);
            let mut alt = fallback_start(cols, 11);
            normalize(&mut alt);
            let second = iterate(alt);
            if second.0 > first.0 {
                second
            } else {
                first
            }
        }
    };

    let (_, mut v) = (rho, v);
    canonical_sign(&mut v);
    let mut left = m.dot(&v);
    let sigma = normalize(&mut left);
    Ok((sigma, left, v))
}

/// Spectral norm σ₁(M); zero for the zero matrix.
pub fn spectral_norm(m: &Array2<f64>, tol: f64) -> f64 {
    match top_singular_triple(m, None, tol) {
        Ok((sigma, _, _)) => sigma,
        Err(_) => 0.0,
    }
}

fn max_asymmetry(m: &Array2<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((m[[i, j]] - m[[j, i]]).abs());
        }
    }
    worst
}

/// Gershgorin bound on the most negative eigenvalue: returns c ≥ 0 such that
/// M + cI is positive semidefinite.
fn gershgorin_negative_shift(m: &Array2<f64>) -> f64 {
    let n = m.nrows();
    let mut shift = 0.0f64;
    for i in 0..n {
        let off: f64 = (0..n).filter(|&j| j != i).map(|j| m[[i, j]].abs()).sum();
        shift = shift.max(off - m[[i, i]]);
    }
    shift.max(0.0)
}

/// Eigenvalues and eigenvectors of a small symmetric matrix by cyclic Jacobi
/// rotations, descending. Used as the Rayleigh–Ritz solve inside the block
/// iteration; the heavy n-dimensional work stays iterative.
fn small_symmetric_eigen(h: &Array2<f64>) -> (Vec<f64>, Array2<f64>) {
    let b = h.nrows();
    let mut a = h.clone();
    let mut u: Array2<f64> = Array2::eye(b);
    let scale = h.iter().fold(0.0f64, |acc, x| acc.max(x.abs())).max(1e-300);
    for _ in 0..64 {
        let mut off = 0.0;
        for i in 0..b {
            for j in (i + 1)..b {
                off += a[[i, j]] * a[[i, j]];
            }
        }
        if off.sqrt() <= 1e-15 * scale * b as f64 {
            break;
        }
        for p in 0..b {
            for q in (p + 1)..b {
                let apq = a[[p, q]];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[[q, q]] - a[[p, p]]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..b {
                    let akp = a[[k, p]];
                    let akq = a[[k, q]];
                    a[[k, p]] = c * akp - s * akq;
                    a[[k, q]] = s * akp + c * akq;
                }
                for k in 0..b {
                    let apk = a[[p, k]];
                    let aqk = a[[q, k]];
                    a[[p, k]] = c * apk - s * aqk;
                    a[[q, k]] = s * apk + c * aqk;
                }
                for k in 0..b {
                    let ukp = u[[k, p]];
                    let ukq = u[[k, q]];
                    u[[k, p]] = c * ukp - s * ukq;
                    u[[k, q]] = s * ukp + c * ukq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..b).collect();
    order.sort_by(|&i, &j| a[[j, j]].total_cmp(&a[[i, i]]));
    let values: Vec<f64> = order.iter().map(|&i| a[[i, i]]).collect();
    let mut rotation = Array2::zeros((b, b));
    for (col, &i) in order.iter().enumerate() {
        for r in 0..b {
            rotation[[r, col]] = u[[r, i]];
        }
    }
    (values, rotation)
}

/// Orthonormalize the columns of V in place; directions that collapse
/// (relative to the largest incoming column) are replaced by deterministic
/// fallback vectors orthogonal to the rest.
fn orthonormalize_block(v: &mut Array2<f64>, attempt_base: u64) {
    let n = v.nrows();
    let b = v.ncols();
    let scale = (0..b)
        .map(|j| v.column(j).dot(&v.column(j)).sqrt())
        .fold(0.0f64, f64::max);
    let threshold = 1e-10 * scale;
    for j in 0..b {
        let mut col = v.column(j).to_owned();
        for _pass in 0..2 {
            for prev in 0..j {
                let p = v.column(prev);
                let c = p.dot(&col);
                col.scaled_add(-c, &p.to_owned());
            }
        }
        let mut attempt = 0;
        while normalize(&mut col) <= threshold {
            col = fallback_start(n, attempt_base + (j as u64) * 31 + attempt);
            for prev in 0..j {
                let p = v.column(prev).to_owned();
                let c = p.dot(&col);
                col.scaled_add(-c, &p);
            }
            attempt += 1;
            if attempt > 8 {
                break;
            }
        }
        v.column_mut(j).assign(&col);
    }
}

/// The k largest eigenpairs of a symmetric matrix by block power (subspace)
/// iteration with a Rayleigh–Ritz solve every sweep. A couple of guard
/// directions ride along so boundary eigenvalues converge; sweeps stop once
/// every requested pair has residual ∥Mv − λv∥ at the 1e-8·∥M∥₂ scale and
/// the Ritz values have stagnated under `tol`.
pub fn top_k_eigenpairs(m: &Array2<f64>, k: usize, tol: f64) -> Result<SpectralDecomposition> {
    top_k_eigenpairs_with_tail(m, k, tol).map(|(d, _)| d)
}

/// Same as [`top_k_eigenpairs`], additionally returning a Ritz estimate of
/// the (k+1)-st largest eigenvalue when the dimension allows one. The tail
/// value is an estimate from the guard block (accurate to the width of the
/// spectral cluster it falls in), not a residual-certified eigenvalue.
pub fn top_k_eigenpairs_with_tail(
    m: &Array2<f64>,
    k: usize,
    tol: f64,
) -> Result<(SpectralDecomposition, Option<f64>)> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::NotSymmetric {
            max_asymmetry: f64::INFINITY,
        });
    }
    if k < 1 || k > n {
        return Err(Error::Numeric(format!("k = {k} out of range for dim {n}")));
    }
    let max_abs = m.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let asym = max_asymmetry(m);
    if asym > 1e-9 * (1.0 + max_abs) {
        return Err(Error::NotSymmetric {
            max_asymmetry: asym,
        });
    }

    if max_abs == 0.0 {
        let vectors = (0..k)
            .map(|i| {
                let mut e = Array1::zeros(n);
                e[i] = 1.0;
                e
            })
            .collect();
        let tail = if k < n { Some(0.0) } else { None };
        return Ok((
            SpectralDecomposition {
                values: vec![0.0; k],
                vectors,
            },
            tail,
        ));
    }

    // Shift so the iterated operator is PSD; the top of its spectrum is then
    // the top of M's.
    let shift = gershgorin_negative_shift(m);
    let b = (k + 2).min(n);
    // max|M_ij| is a lower bound on ∥M∥₂, so this keeps residuals within the
    // 1e-8·∥M∥₂ contract.
    let res_tol = 1e-9 * max_abs;
    let stag_floor = 1e-12 * (frobenius_norm(m) + shift);

    let mut v = Array2::zeros((n, b));
    v.column_mut(0).assign(&Array1::from_elem(n, 1.0));
    for j in 1..b {
        v.column_mut(j).assign(&fallback_start(n, j as u64));
    }
    orthonormalize_block(&mut v, 1000);

    let mut prev_ritz: Option<Vec<f64>> = None;
    let mut result: Option<(Vec<f64>, Array2<f64>)> = None;
    for _sweep in 0..MAX_POWER_ITERATIONS {
        let mut w = m.dot(&v);
        w += &(&v * shift);
        let mut h = v.t().dot(&w);
        h = (&h + &h.t()) * 0.5;
        let (ritz, rotation) = small_symmetric_eigen(&h);
        let v_ritz = v.dot(&rotation);
        let w_ritz = w.dot(&rotation);

        let mut residual_ok = true;
        for (j, &theta) in ritz.iter().enumerate().take(k) {
            let r = &w_ritz.column(j) - &(&v_ritz.column(j) * theta);
            if r.dot(&r).sqrt() > res_tol {
                residual_ok = false;
                break;
            }
        }
        let stagnant = prev_ritz.as_ref().is_some_and(|prev| {
            (0..k).all(|j| (ritz[j] - prev[j]).abs() <= tol * ritz[j].abs().max(stag_floor))
        });
        if residual_ok && stagnant {
            result = Some((ritz, v_ritz));
            break;
        }
        prev_ritz = Some(ritz);
        v = w_ritz;
        orthonormalize_block(&mut v, 2000);
    }

    let Some((ritz, v_ritz)) = result else {
        return Err(Error::ConvergenceFailure {
            iterations: MAX_POWER_ITERATIONS,
        });
    };

    let mut values = Vec::with_capacity(k);
    let mut vectors = Vec::with_capacity(k);
    for (j, &theta) in ritz.iter().enumerate().take(k) {
        let mut vec = v_ritz.column(j).to_owned();
        canonical_sign(&mut vec);
        values.push(theta - shift);
        vectors.push(vec);
    }
    let tail = if b > k { Some(ritz[k] - shift) } else { None };
    Ok((SpectralDecomposition { values, vectors }, tail))
}

/// Orthonormal basis of the row space of M as an r×n matrix, r = numerical
/// rank: pivoted modified Gram–Schmidt with one re-orthogonalization pass,
/// dropping rows whose residual falls below `rank_tol` relative to the
/// largest row norm.
pub fn orthonormal_row_basis(m: &Array2<f64>, rank_tol: f64) -> Result<Array2<f64>> {
    let rows = m.nrows();
    let cols = m.ncols();
    let mut work: Vec<Array1<f64>> = (0..rows).map(|i| m.row(i).to_owned()).collect();
    let mut alive: Vec<usize> = (0..rows).collect();
    let scale = work
        .iter()
        .map(|r| r.dot(r).sqrt())
        .fold(0.0f64, f64::max);
    if scale == 0.0 {
        return Err(Error::ZeroMatrix);
    }
    let threshold = rank_tol * scale;

    let mut basis: Vec<Array1<f64>> = Vec::new();
    while !alive.is_empty() {
        // Pivot: remaining row with the largest residual norm.
        let (pos, norm) = alive
            .iter()
            .enumerate()
            .map(|(pos, &i)| (pos, work[i].dot(&work[i]).sqrt()))
            .fold((0, -1.0), |best, cand| if cand.1 > best.1 { cand } else { best });
        if norm <= threshold {
            break;
        }
        let row_idx = alive.remove(pos);
        let mut b = work[row_idx].clone();
        // Re-orthogonalize once against the accepted basis before normalizing.
        for q in &basis {
            let c = q.dot(&b);
            b.scaled_add(-c, q);
        }
        normalize(&mut b);
        for i in &alive {
            let c = b.dot(&work[*i]);
            work[*i].scaled_add(-c, &b);
        }
        basis.push(b);
    }

    if basis.is_empty() {
        return Err(Error::ZeroMatrix);
    }
    let mut out = Array2::zeros((basis.len(), cols));
    for (i, mut b) in basis.into_iter().enumerate() {
        canonical_sign(&mut b);
        out.row_mut(i).assign(&b);
    }
    Ok(out)
}

/// Numerical row rank at the given relative threshold; zero for the zero matrix.
pub fn numerical_row_rank(m: &Array2<f64>, rank_tol: f64) -> usize {
    match orthonormal_row_basis(m, rank_tol) {
        Ok(b) => b.nrows(),
        Err(_) => 0,
    }
}

/// Projector onto the column space of M: B Bᵀ for an orthonormal column basis B.
pub fn projector_onto(m: &Array2<f64>) -> Result<Array2<f64>> {
    let basis = orthonormal_row_basis(&m.t().to_owned(), DEFAULT_RANK_TOL)?;
    let b = basis.t().to_owned();
    Ok(b.dot(&b.t()))
}

/// Projector onto the orthogonal complement of the column space of M.
/// For the zero matrix this is the identity.
pub fn projector_complement(m: &Array2<f64>) -> Array2<f64> {
    let n = m.nrows();
    match projector_onto(m) {
        Ok(p) => Array2::eye(n) - p,
        Err(_) => Array2::eye(n),
    }
}

/// Columns of `m` restricted to `indices`, in the given order.
pub fn select_columns(m: &Array2<f64>, indices: &[usize]) -> Array2<f64> {
    m.select(Axis(1), indices)
}

/// Squared Euclidean norms of all columns.
pub fn column_sq_norms(m: &Array2<f64>) -> Vec<f64> {
    (0..m.ncols()).map(|j| m.column(j).dot(&m.column(j))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use ndarray::array;

    fn random_matrix(rows: usize, cols: usize, seed: u64) -> Array2<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Array2::from_shape_fn((rows, cols), |_| rng.gen_range(-1.0..1.0))
    }

    fn random_symmetric(n: usize, seed: u64) -> Array2<f64> {
        let a = random_matrix(n, n, seed);
        (&a + &a.t()) * 0.5
    }

    #[test]
    fn singular_triple_diagonal() {
        let m = array![[2.0, 0.0], [0.0, 1.0]];
        let (sigma, _, right) = top_singular_triple(&m, None, 1e-12).unwrap();
        assert!((sigma - 2.0).abs() < 1e-9);
        assert!(right[0].abs() > 1.0 - 1e-6);
    }

    #[test]
    fn singular_triple_identity() {
        let m = Array2::eye(3);
        let (sigma, _, right) = top_singular_triple(&m, None, 1e-12).unwrap();
        assert!((sigma - 1.0).abs() < 1e-9);
        let norm = m.dot(&right).dot(&m.dot(&right)).sqrt();
        assert!((norm - 1.0).abs() < 1e-9);
    }

    #[test]
    fn singular_triple_rank_one() {
        // 2x2 all-ones: eigendecomposition by hand gives sigma = 2, right = (1,1)/sqrt2.
        let m = array![[1.0, 1.0], [1.0, 1.0]];
        let (sigma, left, right) = top_singular_triple(&m, None, 1e-12).unwrap();
        assert!((sigma - 2.0).abs() < 1e-9);
        let r = 1.0 / 2.0f64.sqrt();
        assert!((right[0] - r).abs() < 1e-7 && (right[1] - r).abs() < 1e-7);
        assert!((left[0] - r).abs() < 1e-7 && (left[1] - r).abs() < 1e-7);
    }

    #[test]
    fn singular_triple_zero_matrix() {
        let m = Array2::zeros((3, 2));
        assert!(matches!(
            top_singular_triple(&m, None, 1e-12),
            Err(Error::ZeroMatrix)
        ));
    }

    #[test]
    fn spectral_norm_examples() {
        assert!((spectral_norm(&Array2::eye(4), 1e-12) - 1.0).abs() < 1e-10);
        assert_eq!(spectral_norm(&Array2::zeros((2, 2)), 1e-12), 0.0);
        // Closed-form singular value of [[1,2],[3,4]]:
        // sigma^2 = (30 + sqrt(900 - 4*det^2)) / 2 with det = -2.
        let expected = ((30.0 + (900.0f64 - 16.0).sqrt()) / 2.0).sqrt();
        let m = array![[1.0, 2.0], [3.0, 4.0]];
        assert!((spectral_norm(&m, 1e-12) - expected).abs() < 1e-7);
        assert!((expected - 5.4649857).abs() < 1e-6);
    }

    #[test]
    fn eigenpairs_diagonal() {
        let m = Array2::from_diag(&array![3.0, 2.0, 1.0]);
        let d = top_k_eigenpairs(&m, 2, 1e-12).unwrap();
        assert!((d.values[0] - 3.0).abs() < 1e-8);
        assert!((d.values[1] - 2.0).abs() < 1e-8);
        assert!(d.vectors[0][0].abs() > 1.0 - 1e-6);
        assert!(d.vectors[1][1].abs() > 1.0 - 1e-6);
    }

    #[test]
    fn eigenpairs_zero_matrix() {
        let m = Array2::zeros((4, 4));
        let d = top_k_eigenpairs(&m, 1, 1e-12).unwrap();
        assert_eq!(d.values[0], 0.0);
        assert!((d.vectors[0].dot(&d.vectors[0]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigenpairs_not_symmetric() {
        let m = array![[0.0, 1.0], [0.0, 0.0]];
        assert!(matches!(
            top_k_eigenpairs(&m, 1, 1e-12),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn eigenpairs_match_jacobi_oracle() {
        for seed in 0..20 {
            let m = random_symmetric(8, seed);
            let d = top_k_eigenpairs(&m, 3, 1e-12).unwrap();
            let oracle_vals = oracle::jacobi_eigenvalues(&m);
            let scale = oracle_vals.iter().fold(0.0f64, |a, x| a.max(x.abs()));
            for (got, want) in d.values.iter().zip(&oracle_vals).take(3) {
                assert!(
                    (got - want).abs() <= 1e-6 * scale.max(1e-12),
                    "seed {seed}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn eigenpair_residual_invariant() {
        for seed in 0..10 {
            let m = random_symmetric(7, 100 + seed);
            let d = top_k_eigenpairs(&m, 4, 1e-12).unwrap();
            let norm = spectral_norm(&m, 1e-12);
            for (val, vec) in d.values.iter().zip(&d.vectors) {
                let r = &m.dot(vec) - &(vec * *val);
                assert!(r.dot(&r).sqrt() <= 1e-8 * norm.max(1e-12));
            }
            // Pairwise orthonormality within 1e-9.
            for i in 0..d.vectors.len() {
                for j in 0..=i {
                    let dot = d.vectors[i].dot(&d.vectors[j]);
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((dot - want).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn row_basis_axis_rows() {
        let m = array![[2.0, 0.0, 0.0], [0.0, 0.0, 3.0]];
        let b = orthonormal_row_basis(&m, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(b.nrows(), 2);
        for i in 0..2 {
            let r = b.row(i);
            let nonzero: Vec<usize> = (0..3).filter(|&j| r[j].abs() > 1e-9).collect();
            assert_eq!(nonzero.len(), 1);
            assert!((r[nonzero[0]].abs() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn row_basis_rank_deficient() {
        let m = array![[1.0, 0.0], [2.0, 0.0]];
        let b = orthonormal_row_basis(&m, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(b.nrows(), 1);
        assert!((b[[0, 0]] - 1.0).abs() < 1e-12);
        assert!(b[[0, 1]].abs() < 1e-12);
    }

    #[test]
    fn row_basis_zero_matrix() {
        let m = Array2::zeros((2, 3));
        assert!(matches!(
            orthonormal_row_basis(&m, DEFAULT_RANK_TOL),
            Err(Error::ZeroMatrix)
        ));
    }

    #[test]
    fn row_basis_projector_equality() {
        // Row space of the basis equals the row space of M, checked through
        // the projector computed by the independent SVD-style oracle.
        for seed in 0..8 {
            let m = random_matrix(3, 6, 200 + seed);
            let b = orthonormal_row_basis(&m, DEFAULT_RANK_TOL).unwrap();
            assert_eq!(b.nrows(), 3);
            let gram = b.dot(&b.t());
            let dev = spectral_norm(&(&gram - &Array2::<f64>::eye(3)), 1e-12);
            assert!(dev <= 1e-9);
            let p_basis = b.t().dot(&b);
            let p_oracle = oracle::row_space_projector(&m);
            let diff = spectral_norm(&(&p_basis - &p_oracle), 1e-12);
            assert!(diff <= 1e-8, "seed {seed}: {diff}");
        }
    }

    #[test]
    fn projectors_basic() {
        let e1 = array![[1.0], [0.0], [0.0]];
        let p = projector_onto(&e1).unwrap();
        let expected = Array2::from_diag(&array![1.0, 0.0, 0.0]);
        assert!(spectral_norm(&(&p - &expected), 1e-12) < 1e-12);
        let perp = projector_complement(&e1);
        let expected = Array2::from_diag(&array![0.0, 1.0, 1.0]);
        assert!(spectral_norm(&(&perp - &expected), 1e-12) < 1e-12);
    }

    #[test]
    fn projector_idempotent() {
        for seed in 0..6 {
            let m = random_matrix(5, 2, 300 + seed);
            let p = projector_onto(&m).unwrap();
            let dev = spectral_norm(&(&p.dot(&p) - &p), 1e-12);
            assert!(dev <= 1e-9);
            let asym = spectral_norm(&(&p - &p.t().to_owned()), 1e-12);
            assert!(asym <= 1e-9);
        }
    }

    #[test]
    fn projector_of_orthonormal_is_gram() {
        // For orthonormal A the projector is exactly A Aᵀ.
        let a = orthonormal_row_basis(&random_matrix(3, 7, 42), DEFAULT_RANK_TOL)
            .unwrap()
            .t()
            .to_owned();
        let p = projector_onto(&a).unwrap();
        let gram = a.dot(&a.t());
        assert!(spectral_norm(&(&p - &gram), 1e-12) < 1e-9);
    }
}

//! Spectral ordering of the vertices from the weight matrix.
//!
//! The planted cycle's adjacency matrix is circulant (after relabelling), so
//! its second and third eigenvectors are the cosine/sine pair that places the
//! vertices on a circle in cycle order.  Estimating those two eigenvectors
//! from the observed weights and reading vertices off by angle gives a cheap
//! ordering heuristic that needs no tuning beyond the eigensolver tolerance.

use crate::error::{Error, Result};
use crate::graph::{HamiltonianCycle, WeightedGraph};
use crate::rng::SplitMix64;

/// Number of leading eigenpairs tracked; the angular embedding uses #2 and #3.
const BLOCK: usize = 3;
const MAX_ITERS: usize = 100_000;
const RESIDUAL_CHECK_EVERY: usize = 8;

/// Leading eigenpairs of the weight matrix together with the angular ordering
/// they induce.
#[derive(Debug, Clone)]
pub struct SpectralEmbedding {
    /// Three largest eigenvalues of the (zero-diagonal) weight matrix, in
    /// descending order.
    pub eigenvalues: [f64; 3],
    /// Per-vertex coordinates from the second and third eigenvectors.
    pub coords: Vec<[f64; 2]>,
    /// Vertices sorted by angle around the centroid of `coords`.
    pub cycle: HamiltonianCycle,
}

/// Computes the spectral embedding of a fully observed weight matrix.
///
/// The weight matrix is treated as symmetric with a zero diagonal.  The three
/// leading eigenpairs (by eigenvalue, not magnitude) are found by shifted
/// block orthogonal iteration; the shift is the largest absolute row sum, so
/// the shifted matrix is positive semidefinite and the value order and
/// magnitude order coincide.  Reported eigenvalues have the shift removed.
///
/// The embedding reads off eigenvectors #2 and #3, which carry the planted
/// cycle's cosine/sine pair when the input is the raw observation matrix
/// (off-cycle mean near zero, so the top eigenvector is the near-constant
/// direction).  Feed it raw weights, not log-likelihood ratios: an LLR
/// transform pushes the constant direction to the bottom of the spectrum and
/// the selection rule no longer isolates the pair.
pub fn spectral_embed(g: &WeightedGraph) -> Result<SpectralEmbedding> {
    let n = g.n();
    if n < 4 {
        return Err(Error::invalid("spectral ordering needs at least 4 vertices"));
    }
    g.require_fully_observed("spectral_embed")?;

    let mut b = vec![0.0f64; n * n];
    for (i, j) in g.indexer().edges() {
        let w = g.weight_unchecked(i, j);
        b[i * n + j] = w;
        b[j * n + i] = w;
    }
    let shift = (0..n)
        .map(|i| (0..n).map(|j| b[i * n + j].abs()).sum::<f64>())
        .fold(0.0f64, f64::max);
    for i in 0..n {
        b[i * n + i] += shift;
    }

    let (theta, x) = leading_eigenpairs(&b, n, shift)?;

    let mut coords = vec![[0.0f64; 2]; n];
    for (i, c) in coords.iter_mut().enumerate() {
        *c = [x[n + i], x[2 * n + i]];
    }
    let cx = coords.iter().map(|c| c[0]).sum::<f64>() / n as f64;
    let cy = coords.iter().map(|c| c[1]).sum::<f64>() / n as f64;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let ta = (coords[a][1] - cy).atan2(coords[a][0] - cx);
        let tb = (coords[b][1] - cy).atan2(coords[b][0] - cx);
        ta.partial_cmp(&tb).unwrap().then(a.cmp(&b))
    });
    let cycle = HamiltonianCycle::new(order)?;

    Ok(SpectralEmbedding {
        eigenvalues: [theta[0] - shift, theta[1] - shift, theta[2] - shift],
        coords,
        cycle,
    })
}

/// Convenience wrapper returning only the angular ordering.
pub fn spectral_order(g: &WeightedGraph) -> Result<HamiltonianCycle> {
    spectral_embed(g).map(|e| e.cycle)
}

/// Block orthogonal iteration for the three largest eigenpairs of the shifted
/// matrix `b` (column-blocked as three stacked length-`n` vectors).
fn leading_eigenpairs(b: &[f64], n: usize, shift: f64) -> Result<([f64; 3], Vec<f64>)> {
    let tol = 1e-10 * shift.max(1.0);
    let mut rng = SplitMix64::new(0x5eed_cafe_f00d_u64);
    let mut x = vec![0.0f64; BLOCK * n];
    for v in x.iter_mut() {
        *v = rng.next_f64() - 0.5;
    }
    orthonormalize(&mut x, n, &mut rng);

    let mut y = vec![0.0f64; BLOCK * n];
    let mut iters = 0usize;
    let mut residual = f64::INFINITY;
    while iters < MAX_ITERS {
        for k in 0..BLOCK {
            mat_vec(b, n, &x[k * n..(k + 1) * n], &mut y[k * n..(k + 1) * n]);
        }
        iters += 1;
        if iters % RESIDUAL_CHECK_EVERY == 0 || iters == 1 {
            residual = subspace_residual(&x, &y, n);
            if residual < tol {
                break;
            }
        }
        x.copy_from_slice(&y);
        orthonormalize(&mut x, n, &mut rng);
    }
    if residual >= tol {
        return Err(Error::EigenNonConvergence { residual, iters });
    }

    // Rayleigh-Ritz on the converged subspace: rotate the block so each
    // column is an eigenvector and the Ritz values are sorted descending.
    let mut s = [[0.0f64; BLOCK]; BLOCK];
    for (r, row) in s.iter_mut().enumerate() {
        for (c, v) in row.iter_mut().enumerate() {
            *v = dot(&x[r * n..(r + 1) * n], &y[c * n..(c + 1) * n]);
        }
    }
    let (theta, z) = jacobi3(&s);
    let mut out = vec![0.0f64; BLOCK * n];
    for k in 0..BLOCK {
        for i in 0..n {
            let mut acc = 0.0;
            for (c, zc) in z.iter().enumerate() {
                acc += x[c * n + i] * zc[k];
            }
            out[k * n + i] = acc;
        }
    }
    Ok((theta, out))
}

fn mat_vec(b: &[f64], n: usize, v: &[f64], out: &mut [f64]) {
    for (i, o) in out.iter_mut().enumerate() {
        *o = dot(&b[i * n..(i + 1) * n], v);
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Modified Gram-Schmidt on the three stacked columns; a column that collapses
/// to numerical zero is replaced by a fresh random draw and reorthogonalized.
fn orthonormalize(x: &mut [f64], n: usize, rng: &mut SplitMix64) {
    for k in 0..BLOCK {
        loop {
            for j in 0..k {
                let r = {
                    let (head, tail) = x.split_at(k * n);
                    dot(&head[j * n..(j + 1) * n], &tail[..n])
                };
                let (head, tail) = x.split_at_mut(k * n);
                for (t, h) in tail[..n].iter_mut().zip(&head[j * n..(j + 1) * n]) {
                    *t -= r * h;
                }
            }
            let col = &mut x[k * n..(k + 1) * n];
            let norm = dot(col, col).sqrt();
            if norm > 1e-12 {
                for v in col.iter_mut() {
                    *v /= norm;
                }
                break;
            }
            for v in col.iter_mut() {
                *v = rng.next_f64() - 0.5;
            }
        }
    }
}

/// Frobenius norm of `y - x (x^T y)`, the distance of span(x) from invariance.
fn subspace_residual(x: &[f64], y: &[f64], n: usize) -> f64 {
    let mut r = [[0.0f64; BLOCK]; BLOCK];
    for (a, row) in r.iter_mut().enumerate() {
        for (c, v) in row.iter_mut().enumerate() {
            *v = dot(&x[a * n..(a + 1) * n], &y[c * n..(c + 1) * n]);
        }
    }
    let mut acc = 0.0;
    for c in 0..BLOCK {
        for i in 0..n {
            let mut proj = 0.0;
            for (a, row) in r.iter().enumerate() {
                proj += x[a * n + i] * row[c];
            }
            let d = y[c * n + i] - proj;
            acc += d * d;
        }
    }
    acc.sqrt()
}

/// Cyclic Jacobi eigendecomposition of a symmetric 3x3 matrix.  Returns the
/// eigenvalues in descending order and the matching rotation columns.
fn jacobi3(s: &[[f64; 3]; 3]) -> ([f64; 3], [[f64; 3]; 3]) {
    let mut a = *s;
    let mut z = [[0.0f64; 3]; 3];
    for (i, row) in z.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let scale = a
        .iter()
        .flatten()
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(1.0);
    for _ in 0..64 {
        let off = a[0][1].abs() + a[0][2].abs() + a[1][2].abs();
        if off < 1e-15 * scale {
            break;
        }
        for (p, q) in [(0usize, 1usize), (0, 2), (1, 2)] {
            if a[p][q].abs() < 1e-300 {
                continue;
            }
            let tau = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
            let t = if tau >= 0.0 {
                1.0 / (tau + (1.0 + tau * tau).sqrt())
            } else {
                -1.0 / (-tau + (1.0 + tau * tau).sqrt())
            };
            let c = 1.0 / (1.0 + t * t).sqrt();
            let sgn = t * c;
            for k in 0..3 {
                let akp = a[k][p];
                let akq = a[k][q];
                a[k][p] = c * akp - sgn * akq;
                a[k][q] = sgn * akp + c * akq;
            }
            for k in 0..3 {
                let apk = a[p][k];
                let aqk = a[q][k];
                a[p][k] = c * apk - sgn * aqk;
                a[q][k] = sgn * apk + c * aqk;
            }
            for row in z.iter_mut() {
                let zp = row[p];
                let zq = row[q];
                row[p] = c * zp - sgn * zq;
                row[q] = sgn * zp + c * zq;
            }
        }
    }
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&i, &j| a[j][j].partial_cmp(&a[i][i]).unwrap());
    let theta = [a[idx[0]][idx[0]], a[idx[1]][idx[1]], a[idx[2]][idx[2]]];
    let mut zz = [[0.0f64; 3]; 3];
    for (k, &src) in idx.iter().enumerate() {
        for (r, row) in z.iter().enumerate() {
            zz[r][k] = row[src];
        }
    }
    (theta, zz)
}

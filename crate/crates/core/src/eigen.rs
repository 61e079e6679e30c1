//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each pivot `(p, q)` is handled in two steps: a diagonal phase on basis
//! vector `q` makes `a_pq` real and nonnegative, then a real plane rotation
//! annihilates it. Both steps are unitary, so the spectrum is preserved and
//! Hermiticity is maintained exactly by writing each updated entry and its
//! conjugate partner together.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tensor::ComplexMatrix;

/// Maximum number of full sweeps before giving up.
pub const MAX_SWEEPS: usize = 100;
/// Off-diagonal Frobenius tolerance, relative to `max(1, ‖M‖_F)`.
pub const OFF_DIAGONAL_TOL: f64 = 1e-12;
/// Hermiticity tolerance accepted before symmetrizing.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let (values, _) = jacobi(m, false)?;
    Ok(values)
}

/// Eigenpairs, ascending by eigenvalue. Column `k` of the returned matrix is
/// the eigenvector for `values[k]`.
#[cfg(test)]
pub(crate) fn hermitian_eigen(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let (values, vectors) = jacobi(m, true)?;
    Ok((values, vectors.expect("vectors requested")))
}

/// Trace norm `Σ|μ_k|` of a Hermitian matrix.
pub fn trace_norm_hermitian(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?.iter().map(|x| x.abs()).sum())
}

fn symmetrized(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let n = m.rows();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(m[(i, i)].re, 0.0)
        } else {
            (m[(i, j)] + m[(j, i)].conj()) * 0.5
        }
    }))
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi(m: &ComplexMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<ComplexMatrix>)> {
    let mut a = symmetrized(m)?;
    let n = a.rows();
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));
    let tol = OFF_DIAGONAL_TOL * a.frobenius_norm().max(1.0);

    let mut converged = false;
    let mut residual = off_diagonal_norm(&a);
    for _ in 0..MAX_SWEEPS {
        if residual <= tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, v.as_mut(), p, q);
            }
        }
        residual = off_diagonal_norm(&a);
    }
    if !converged && residual > tol {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            residual,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = v.map(|v| ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]));
    Ok((values, vectors))
}

fn rotate(a: &mut ComplexMatrix, mut v: Option<&mut ComplexMatrix>, p: usize, q: usize) {
    let n = a.rows();
    let g = a[(p, q)];
    let h = g.norm();
    if h < 1e-300 {
        return;
    }

    // Phase step: scale basis vector q by conj(g)/|g| so a_pq becomes |g|.
    let phase = g.conj() / h;
    for k in 0..n {
        if k != q {
            let x = a[(k, q)] * phase;
            a[(k, q)] = x;
            a[(q, k)] = x.conj();
        }
    }
    if let Some(v) = v.as_deref_mut() {
        for k in 0..n {
            v[(k, q)] *= phase;
        }
    }

    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * h);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let new_kp = akp * c - akq * s;
        let new_kq = akp * s + akq * c;
        a[(k, p)] = new_kp;
        a[(p, k)] = new_kp.conj();
        a[(k, q)] = new_kq;
        a[(q, k)] = new_kq.conj();
    }
    a[(p, p)] = Complex64::new(app - t * h, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * h, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * c - vkq * s;
            v[(k, q)] = vkp * s + vkq * c;
        }
    }
}

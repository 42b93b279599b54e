//! Dense storage, products, norms and the symmetric eigensolver.

mod eigen;
mod matrix;
mod triangular;

pub use eigen::symmetric_eigenvalues;
pub use matrix::{frobenius_norm, matmul, Matrix};
pub use triangular::{reverse_permute, ReversalPermutation, Shape, TriangularMatrix};

use crate::error::{Error, Result};
use crate::UNIT_ROUNDOFF;

/// Largest singular value.
///
/// Bitwise-symmetric input uses `max |lambda(A)|` directly; anything else goes
/// through the eigenvalues of the Gram matrix `A^T A`.
pub fn spectral_norm(a: &Matrix) -> Result<f64> {
    a.ensure_finite()?;
    if a.rows() == 0 || a.cols() == 0 {
        return Ok(0.0);
    }
    if a.is_symmetric() {
        let ev = symmetric_eigenvalues(a)?;
        return Ok(ev.iter().fold(0.0f64, |m, x| m.max(x.abs())));
    }
    // Scale before forming the Gram matrix so the squares stay in range.
    let scale = a.max_abs();
    if scale == 0.0 {
        return Ok(0.0);
    }
    let s = a.scale(1.0 / scale);
    let gram = matmul(&s.transpose(), &s)?.symmetrize();
    let ev = symmetric_eigenvalues(&gram)?;
    let top = ev.iter().fold(0.0f64, |m, &x| m.max(x));
    Ok(scale * libm::sqrt(top))
}

/// `kappa_2(A) = ||A|| ||A^{-1}||`.
///
/// Symmetric positive definite input uses the eigenvalue ratio; anything else is
/// handled as `spectral_norm(A) * spectral_norm(inverse(A))`.
pub fn condition_number(a: &Matrix) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::Dimension {
            op: "condition_number",
            lhs: (a.rows(), a.cols()),
            rhs: (a.cols(), a.rows()),
        });
    }
    a.ensure_finite()?;
    if a.is_symmetric() {
        let ev = symmetric_eigenvalues(a)?;
        let lo = ev.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = ev.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if lo > 0.0 {
            return Ok(hi / lo);
        }
    }
    let inv = inverse(a)?;
    Ok(spectral_norm(a)? * spectral_norm(&inv)?)
}

/// Inverse by Gaussian elimination with partial pivoting.
///
/// Fails with [`Error::Singular`] when a pivot falls below `n * eps * max|a_ij|`.
pub fn inverse(a: &Matrix) -> Result<Matrix> {
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::Dimension {
            op: "inverse",
            lhs: (a.rows(), a.cols()),
            rhs: (a.cols(), a.rows()),
        });
    }
    a.ensure_finite()?;
    let tiny = (n as f64) * UNIT_ROUNDOFF * a.max_abs();
    let mut lu = a.clone();
    let mut inv = Matrix::identity(n);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| lu[(i, k)].abs().total_cmp(&lu[(j, k)].abs()))
            .unwrap_or(k);
        let piv = lu[(p, k)];
        if piv.abs() <= tiny || piv == 0.0 {
            return Err(Error::Singular { index: k + 1 });
        }
        if p != k {
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = t;
                let t = inv[(k, j)];
                inv[(k, j)] = inv[(p, j)];
                inv[(p, j)] = t;
            }
        }
        for i in (k + 1)..n {
            let m = lu[(i, k)] / piv;
            if m == 0.0 {
                continue;
            }
            lu[(i, k)] = 0.0;
            for j in (k + 1)..n {
                lu[(i, j)] -= m * lu[(k, j)];
            }
            for j in 0..n {
                inv[(i, j)] -= m * inv[(k, j)];
            }
        }
    }
    // back substitution, one column of the identity at a time
    for c in 0..n {
        for i in (0..n).rev() {
            let mut s = inv[(i, c)];
            for j in (i + 1)..n {
                s -= lu[(i, j)] * inv[(j, c)];
            }
            inv[(i, c)] = s / lu[(i, i)];
        }
    }
    inv.ensure_finite()
        .map_err(|_| Error::Singular { index: n })?;
    Ok(inv)
}

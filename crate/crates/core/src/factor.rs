//! Cholesky, reverse Cholesky and triangular solves.

use crate::dense::{frobenius_norm, Matrix, ReversalPermutation, Shape, TriangularMatrix};
use crate::error::{Error, Result, Stage};

/// Relative asymmetry accepted by the symmetric factorizations.
pub(crate) const SYMMETRY_TOL: f64 = 1e-12;

fn check_symmetric(a: &Matrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::Dimension {
            op: "cholesky",
            lhs: (a.rows(), a.cols()),
            rhs: (a.cols(), a.rows()),
        });
    }
    a.ensure_finite()?;
    let tol = SYMMETRY_TOL * frobenius_norm(a);
    let asym = a.max_asymmetry();
    if asym > tol {
        return Err(Error::NotSymmetric {
            asymmetry: asym,
            tolerance: tol,
        });
    }
    Ok(())
}

/// `A = L L^T` with `L` lower triangular and positive diagonal.
///
/// Unblocked right-looking elimination reading only the lower triangle of `a`.
/// Each entry receives its updates `- l_ik l_jk` in ascending `k`.
pub fn cholesky_lower(a: &Matrix) -> Result<TriangularMatrix> {
    check_symmetric(a)?;
    let n = a.rows();
    let mut w = a.clone();
    for k in 0..n {
        let d = w[(k, k)];
        if !(d > 0.0) || !d.is_finite() {
            return Err(Error::PivotNotPositive {
                index: k + 1,
                stage: Stage::Whole,
            });
        }
        let lkk = libm::sqrt(d);
        w[(k, k)] = lkk;
        for i in (k + 1)..n {
            w[(i, k)] /= lkk;
        }
        for j in (k + 1)..n {
            let ljk = w[(j, k)];
            for i in j..n {
                w[(i, j)] -= w[(i, k)] * ljk;
            }
        }
    }
    Ok(TriangularMatrix::from_triangle(Shape::Lower, &w))
}

/// `A = U U^T` with `U` upper triangular and positive diagonal.
///
/// Computed as `U = P chol(P^T A P) P^T` with `P` the reversal permutation, so
/// that identity holds bitwise.
pub fn reverse_cholesky_upper(a: &Matrix) -> Result<TriangularMatrix> {
    check_symmetric(a)?;
    let p = ReversalPermutation::new(a.rows());
    let l = cholesky_lower(&p.conjugate(a)?)?;
    let u = p.conjugate(l.as_matrix())?;
    TriangularMatrix::new(Shape::Upper, u)
}

/// Solves `L X = B` by forward substitution, rows in ascending order.
pub fn forward_substitute(l: &TriangularMatrix, b: &Matrix) -> Result<Matrix> {
    if l.shape() != Shape::Lower {
        return Err(Error::Usage(
            "forward substitution needs a lower triangular matrix",
        ));
    }
    let n = l.order();
    if b.rows() != n {
        return Err(Error::Dimension {
            op: "forward_substitute",
            lhs: (n, n),
            rhs: (b.rows(), b.cols()),
        });
    }
    for i in 0..n {
        if l[(i, i)] == 0.0 {
            return Err(Error::Singular { index: i + 1 });
        }
    }
    let mut x = Matrix::zeros(n, b.cols());
    for c in 0..b.cols() {
        for i in 0..n {
            let mut s = b[(i, c)];
            for k in 0..i {
                s -= l[(i, k)] * x[(k, c)];
            }
            x[(i, c)] = s / l[(i, i)];
        }
    }
    Ok(x)
}

/// Solves `U X = B` by back substitution, rows in descending order.
pub fn backward_substitute(u: &TriangularMatrix, b: &Matrix) -> Result<Matrix> {
    if u.shape() != Shape::Upper {
        return Err(Error::Usage(
            "back substitution needs an upper triangular matrix",
        ));
    }
    let n = u.order();
    if b.rows() != n {
        return Err(Error::Dimension {
            op: "backward_substitute",
            lhs: (n, n),
            rhs: (b.rows(), b.cols()),
        });
    }
    for i in 0..n {
        if u[(i, i)] == 0.0 {
            return Err(Error::Singular { index: i + 1 });
        }
    }
    let mut x = Matrix::zeros(n, b.cols());
    for c in 0..b.cols() {
        for i in (0..n).rev() {
            let mut s = b[(i, c)];
            for k in (i + 1)..n {
                s -= u[(i, k)] * x[(k, c)];
            }
            x[(i, c)] = s / u[(i, i)];
        }
    }
    Ok(x)
}

/// `L^{-1}` as `forward_substitute(L, I)`. The result is lower triangular.
pub fn lower_triangular_inverse(l: &TriangularMatrix) -> Result<Matrix> {
    forward_substitute(l, &Matrix::identity(l.order()))
}

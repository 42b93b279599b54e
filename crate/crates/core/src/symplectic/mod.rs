//! Algorithms W1 and W2, the structure matrix `J`, loss of symplecticity and
//! the associated bound checkers.
//!
//! Throughout, `n` is the half-dimension: the factored matrix has order `2n`.

mod analysis;
mod checks;
mod perturb;

use crate::dense::{matmul, spectral_norm, Matrix, Shape, TriangularMatrix};
use crate::error::{Error, Result, Stage};
use crate::factor::{
    cholesky_lower, forward_substitute, lower_triangular_inverse, reverse_cholesky_upper,
    SYMMETRY_TOL,
};
use crate::UNIT_ROUNDOFF;

pub use analysis::Analysis;
pub use checks::{
    check_condition_bounds, check_identities, check_omega_factor_bounds, check_w1_error_bound,
    check_w2_backward, check_w2_backward_with, BoundCheckResult, Verdict,
};
pub use perturb::{
    check_schur_perturbation, delta_l2_has_factor_form, perturbation_experiment, PerturbationKind,
};

/// `J = [0 I; -I 0]` of order `2n`.
pub fn structure_matrix(n: usize) -> Matrix {
    Matrix::from_fn(2 * n, 2 * n, |i, j| {
        if j == i + n {
            1.0
        } else if i == j + n {
            -1.0
        } else {
            0.0
        }
    })
}

fn half_order(a: &Matrix, op: &'static str) -> Result<usize> {
    if !a.is_square() || a.rows() % 2 != 0 || a.rows() == 0 {
        return Err(Error::Dimension {
            op,
            lhs: (a.rows(), a.cols()),
            rhs: (2, 2),
        });
    }
    Ok(a.rows() / 2)
}

/// `J a`, by row movement only.
fn j_times(a: &Matrix) -> Matrix {
    let n = a.rows() / 2;
    Matrix::from_fn(a.rows(), a.cols(), |i, j| {
        if i < n {
            a[(i + n, j)]
        } else {
            -a[(i - n, j)]
        }
    })
}

/// `Omega(a) = a^T J a - J`. It vanishes exactly when `a` is symplectic.
pub fn omega(a: &Matrix) -> Result<Matrix> {
    let n = half_order(a, "omega")?;
    let mut m = matmul(&a.transpose(), &j_times(a))?;
    for i in 0..n {
        m[(i, i + n)] -= 1.0;
        m[(i + n, i)] += 1.0;
    }
    Ok(m)
}

/// `||Omega(a)||_2`.
pub fn loss_of_symplecticity(a: &Matrix) -> Result<f64> {
    spectral_norm(&omega(a)?)
}

/// `J^T a^T J`, the inverse of `a` when `a` is symplectic. Pure index movement.
///
/// Block-wise this is `[a22^T, -a12^T; -a21^T, a11^T]`, so symmetric input gives
/// symmetric output bitwise.
pub fn structured_inverse(a: &Matrix) -> Result<Matrix> {
    let n = half_order(a, "structured_inverse")?;
    let swap = |k: usize| if k < n { k + n } else { k - n };
    let sign = |k: usize| if k < n { 1.0 } else { -1.0 };
    Ok(Matrix::from_fn(2 * n, 2 * n, |i, j| {
        sign(i) * sign(j) * a[(swap(j), swap(i))]
    }))
}

/// `J^T a^T J` after confirming `||Omega(a)|| <= tol * ||a||^2`.
pub fn symplectic_inverse(a: &Matrix, tol: f64) -> Result<Matrix> {
    half_order(a, "symplectic_inverse")?;
    let w = loss_of_symplecticity(a)?;
    let na = spectral_norm(a)?;
    let tolerance = tol * na * na;
    if !(w <= tolerance) {
        return Err(Error::NotSymplectic {
            omega: w,
            tolerance,
        });
    }
    structured_inverse(a)
}

/// Order and unit roundoff for the accumulation constant `gamma_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaParams {
    pub n: usize,
    pub eps: f64,
}

impl GammaParams {
    /// `gamma_n` at the unit roundoff of binary64.
    pub fn new(n: usize) -> Self {
        Self {
            n,
            eps: UNIT_ROUNDOFF,
        }
    }

    pub fn with_eps(n: usize, eps: f64) -> Self {
        Self { n, eps }
    }
}

/// `gamma_n(eps) = n eps / (1 - n eps)`, defined for `n eps < 1`.
pub fn gamma(g: GammaParams) -> Result<f64> {
    let ne = g.n as f64 * g.eps;
    if !(g.eps >= 0.0) || !(ne < 1.0) {
        return Err(Error::Domain("gamma_n needs 0 <= n * eps < 1"));
    }
    Ok(ne / (1.0 - ne))
}

/// `gamma_k` at unit roundoff; infinite outside its domain.
pub(crate) fn gamma_u(k: usize) -> f64 {
    gamma(GammaParams::new(k)).unwrap_or(f64::INFINITY)
}

/// A symmetric matrix of order `2n` stored as its blocks `A11`, `A12`, `A22`.
///
/// `A21` is implicitly `A12^T`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockPartition {
    n: usize,
    a11: Matrix,
    a12: Matrix,
    a22: Matrix,
}

impl BlockPartition {
    /// Splits a symmetric matrix of even order.
    ///
    /// Asymmetry beyond `1e-12 ||a||_F` is rejected; the `A21` block is otherwise ignored.
    pub fn from_matrix(a: &Matrix) -> Result<Self> {
        let n = half_order(a, "block_partition")?;
        a.ensure_finite()?;
        let tol = SYMMETRY_TOL * crate::frobenius_norm(a);
        let asym = a.max_asymmetry();
        if asym > tol {
            return Err(Error::NotSymmetric {
                asymmetry: asym,
                tolerance: tol,
            });
        }
        Ok(Self {
            n,
            a11: a.submatrix(0, 0, n, n),
            a12: a.submatrix(0, n, n, n),
            a22: a.submatrix(n, n, n, n),
        })
    }

    /// Builds the partition directly from `n x n` blocks.
    pub fn from_blocks(a11: Matrix, a12: Matrix, a22: Matrix) -> Result<Self> {
        let n = a11.rows();
        for (m, op) in [(&a11, "a11"), (&a12, "a12"), (&a22, "a22")] {
            if m.rows() != n || m.cols() != n || n == 0 {
                return Err(Error::Dimension {
                    op,
                    lhs: (n, n),
                    rhs: (m.rows(), m.cols()),
                });
            }
            m.ensure_finite()?;
        }
        Ok(Self { n, a11, a12, a22 })
    }

    /// Half-dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a11(&self) -> &Matrix {
        &self.a11
    }

    pub fn a12(&self) -> &Matrix {
        &self.a12
    }

    pub fn a22(&self) -> &Matrix {
        &self.a22
    }

    /// `[A11 A12; A12^T A22]`.
    pub fn assemble(&self) -> Matrix {
        Matrix::from_blocks(&self.a11, &self.a12, &self.a12.transpose(), &self.a22)
            .expect("blocks share one order")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    W1,
    W2,
}

/// `L = [L11 0; L21 L22]` with `L11` lower and `L22` upper triangular.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockFactor {
    l11: TriangularMatrix,
    l21: Matrix,
    l22: TriangularMatrix,
    algorithm: Algorithm,
}

impl BlockFactor {
    /// Checks shapes and triangularity. Diagonal signs are not checked, so a
    /// deliberately corrupted factor can still be represented.
    pub fn from_parts(
        l11: TriangularMatrix,
        l21: Matrix,
        l22: TriangularMatrix,
        algorithm: Algorithm,
    ) -> Result<Self> {
        let n = l11.order();
        if l11.shape() != Shape::Lower || l22.shape() != Shape::Upper {
            return Err(Error::Usage("L11 must be lower and L22 upper triangular"));
        }
        if l22.order() != n || l21.rows() != n || l21.cols() != n {
            return Err(Error::Dimension {
                op: "block_factor",
                lhs: (n, n),
                rhs: (l21.rows(), l21.cols()),
            });
        }
        Ok(Self {
            l11,
            l21,
            l22,
            algorithm,
        })
    }

    pub fn n(&self) -> usize {
        self.l11.order()
    }

    pub fn l11(&self) -> &TriangularMatrix {
        &self.l11
    }

    pub fn l21(&self) -> &Matrix {
        &self.l21
    }

    pub fn l22(&self) -> &TriangularMatrix {
        &self.l22
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    /// The full lower triangular matrix of order `2n`.
    pub fn assemble(&self) -> Matrix {
        let n = self.n();
        Matrix::from_blocks(
            self.l11.as_matrix(),
            &Matrix::zeros(n, n),
            &self.l21,
            self.l22.as_matrix(),
        )
        .expect("blocks share one order")
    }
}

/// Steps shared bitwise by both algorithms: `L11 = chol(A11)` and `L21^T = L11^{-1} A12`.
fn leading_blocks(p: &BlockPartition) -> Result<(TriangularMatrix, Matrix)> {
    let l11 = cholesky_lower(&p.a11).map_err(|e| e.at_stage(Stage::LeadingBlock))?;
    let l21 = forward_substitute(&l11, &p.a12)?.transpose();
    Ok((l11, l21))
}

/// Algorithm W1: `L22 = L11^{-T}`.
///
/// The factor is symplectic whenever `A` is, and in exact arithmetic
/// `L1 L1^T = A + diag(0, A11^{-1} - S)`.
pub fn algorithm_w1(p: &BlockPartition) -> Result<BlockFactor> {
    let (l11, l21) = leading_blocks(p)?;
    let l22 = TriangularMatrix::new(Shape::Upper, lower_triangular_inverse(&l11)?.transpose())?;
    BlockFactor::from_parts(l11, l21, l22, Algorithm::W1)
}

/// Algorithm W2: `L22` is the reverse Cholesky factor of `S = A22 - L21 L21^T`.
///
/// `L2 L2^T = A` in exact arithmetic for every SPD `A`.
pub fn algorithm_w2(p: &BlockPartition) -> Result<BlockFactor> {
    let (l11, l21) = leading_blocks(p)?;
    let s = schur_complement(p, &l21)?;
    let l22 = reverse_cholesky_upper(&s).map_err(|e| e.at_stage(Stage::SchurComplement))?;
    BlockFactor::from_parts(l11, l21, l22, Algorithm::W2)
}

/// Runs the selected algorithm.
pub fn factorize(p: &BlockPartition, algorithm: Algorithm) -> Result<BlockFactor> {
    match algorithm {
        Algorithm::W1 => algorithm_w1(p),
        Algorithm::W2 => algorithm_w2(p),
    }
}

/// `S = A22 - L21 L21^T`, symmetrized.
pub fn schur_complement(p: &BlockPartition, l21: &Matrix) -> Result<Matrix> {
    if l21.rows() != p.n || l21.cols() != p.n {
        return Err(Error::Dimension {
            op: "schur_complement",
            lhs: (p.n, p.n),
            rhs: (l21.rows(), l21.cols()),
        });
    }
    let s = &p.a22 - &matmul(l21, &l21.transpose())?;
    Ok(s.symmetrize())
}

/// `||L22 L22^T - (A22 - L21 L21^T)||_2` for a W1 factor, an estimate of `||A11^{-1} - S||_2`.
pub fn distance_to_symplecticity(f: &BlockFactor, p: &BlockPartition) -> Result<f64> {
    if f.algorithm != Algorithm::W1 {
        return Err(Error::Usage("distance to symplecticity needs a W1 factor"));
    }
    let s = schur_complement(p, &f.l21)?;
    let l22 = f.l22.as_matrix();
    let d = &matmul(l22, &l22.transpose())? - &s;
    spectral_norm(&d)
}

/// Residuals of the two conditions characterizing a symplectic block lower
/// triangular factor: `L11^T L22 = I` and `L21^T L11` symmetric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticFactorReport {
    /// `||L11^T L22 - I||_2`.
    pub inverse_residual: f64,
    /// `||L21^T L11 - L11^T L21||_2`.
    pub symmetry_residual: f64,
    pub is_symplectic: bool,
}

pub fn is_symplectic_block_factor(f: &BlockFactor, tol: f64) -> Result<SymplecticFactorReport> {
    let n = f.n();
    let l11 = f.l11.as_matrix();
    let l11t = l11.transpose();
    let inv = &matmul(&l11t, f.l22.as_matrix())? - &Matrix::identity(n);
    let sym = &matmul(&f.l21.transpose(), l11)? - &matmul(&l11t, &f.l21)?;
    let inverse_residual = spectral_norm(&inv)?;
    let symmetry_residual = spectral_norm(&sym)?;
    Ok(SymplecticFactorReport {
        inverse_residual,
        symmetry_residual,
        is_symplectic: inverse_residual <= tol && symmetry_residual <= tol,
    })
}

/// `(Omega11, Omega12, Omega22)` from the blocks of a symmetric `A`.
///
/// `Omega11 = A11 A12^T - A12 A11`, `Omega12 = A11 A22 - A12^2 - I`,
/// `Omega22 = A12^T A22 - A22 A12`, and `Omega21 = -Omega12^T`.
pub fn omega_blocks(p: &BlockPartition) -> Result<(Matrix, Matrix, Matrix)> {
    let a12t = p.a12.transpose();
    let o11 = &matmul(&p.a11, &a12t)? - &matmul(&p.a12, &p.a11)?;
    let mut o12 = &matmul(&p.a11, &p.a22)? - &matmul(&p.a12, &p.a12)?;
    for i in 0..p.n {
        o12[(i, i)] -= 1.0;
    }
    let o22 = &matmul(&a12t, &p.a22)? - &matmul(&p.a22, &p.a12)?;
    Ok((o11, o12, o22))
}

/// `[O11 O12; -O12^T O22]`.
pub fn assemble_omega(o11: &Matrix, o12: &Matrix, o22: &Matrix) -> Result<Matrix> {
    Matrix::from_blocks(o11, o12, &-&o12.transpose(), o22)
}

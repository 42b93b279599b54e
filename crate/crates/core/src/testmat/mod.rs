//! Deterministic generators for the test families.

mod prng;

pub use prng::Prng;

use alloc::vec;
use alloc::vec::Vec;

use crate::dense::{matmul, Matrix};
use crate::error::{Error, Result};
use crate::factor::{cholesky_lower, lower_triangular_inverse};
use crate::symplectic::{structured_inverse, BlockPartition};

/// The fixed 4x4 SPD matrix `L0 L0^T` with `L0` the all-ones lower triangle.
pub fn example1() -> Matrix {
    Matrix::from_fn(4, 4, |i, j| (i.min(j) + 1) as f64)
}

/// The 4x4 matrix `S(theta)` built from `cosh theta` and `sinh theta`.
///
/// Symplectic in exact arithmetic; only nearly so once rounded.
pub fn tam_s(theta: f64) -> Matrix {
    let c = libm::cosh(theta);
    let s = libm::sinh(theta);
    Matrix::from_rows(&[
        [c, s, 0.0, s],
        [s, c, s, 0.0],
        [0.0, 0.0, c, -s],
        [0.0, 0.0, -s, c],
    ])
}

/// `S(theta)^T S(theta)`.
pub fn tam_spd(theta: f64) -> Matrix {
    let s = tam_s(theta);
    matmul(&s.transpose(), &s)
        .expect("square operands")
        .symmetrize()
}

/// `J^T (S^T S) J`, the inverse of `S^T S` whenever `S` is exactly symplectic.
pub fn tam_spd_inverse(theta: f64) -> Matrix {
    structured_inverse(&tam_spd(theta))
        .expect("even order")
        .symmetrize()
}

/// Largest order for which the Pascal family is generated.
pub const PASCAL_MAX: usize = 16;

fn binomials(n: usize) -> Vec<Vec<i128>> {
    let mut c = vec![vec![0i128; n]; n];
    for i in 0..n {
        c[i][0] = 1;
        for j in 1..=i {
            c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
        }
    }
    c
}

/// The Pascal matrix `P_ij = C(i + j, i)` (0-based) and its inverse, both exact.
///
/// `P = B B^T` with `B_ij = C(i, j)` and `B^{-1}_ij = (-1)^{i+j} C(i, j)`.
fn pascal_pair(n: usize) -> (Vec<Vec<i128>>, Vec<Vec<i128>>) {
    let c = binomials(2 * n);
    let p = (0..n)
        .map(|i| (0..n).map(|j| c[i + j][i]).collect())
        .collect();
    let sign = |k: usize| if k % 2 == 0 { 1i128 } else { -1 };
    let inv = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let s: i128 = (i.max(j)..n).map(|k| c[k][i] * c[k][j]).sum();
                    sign(i + j) * s
                })
                .collect()
        })
        .collect();
    (p, inv)
}

/// `[G, I; I, 2 G^{-1}]` with `G` the Pascal matrix of order `n` flipped in both
/// dimensions. Every entry is an integer, so the result is exactly symplectic.
pub fn pascal_symplectic(n: usize) -> Result<BlockPartition> {
    if n == 0 || n > PASCAL_MAX {
        return Err(Error::Domain("Pascal family needs 1 <= n <= 16"));
    }
    let (p, inv) = pascal_pair(n);
    let flip = |m: &Vec<Vec<i128>>, scale: i128| {
        Matrix::from_fn(n, n, |i, j| (scale * m[n - 1 - i][n - 1 - j]) as f64)
    };
    BlockPartition::from_blocks(flip(&p, 1), Matrix::identity(n), flip(&inv, 2))
}

/// The pair `(A, A_hat)` with `A = [G, I; I, 2 G^{-1}]`, `G = diag(t, 1/t)`, and
/// `A_hat` equal to `A` except for `1/t + theta` in position `(2, 2)`.
pub fn diag_family(t: f64, theta: f64) -> Result<(Matrix, Matrix)> {
    if !(t >= 1.0) || !t.is_finite() || !(theta >= 0.0) || !theta.is_finite() {
        return Err(Error::Domain("diagonal family needs t >= 1 and theta >= 0"));
    }
    let build = |g22: f64| {
        let a11 = Matrix::from_diag(&[t, g22]);
        let a22 = Matrix::from_diag(&[2.0 / t, 2.0 * t]);
        BlockPartition::from_blocks(a11, Matrix::identity(2), a22).map(|p| p.assemble())
    };
    Ok((build(1.0 / t)?, build(1.0 / t + theta)?))
}

/// `[G, G H; H G, H G H + G^{-1}]`, symplectic for symmetric `H` and SPD `G`.
///
/// `G^{-1}` comes from the Cholesky factor of `G`; the result is symmetrized.
pub fn pdp_assemble(g: &Matrix, h: &Matrix) -> Result<BlockPartition> {
    if h.rows() != g.rows() || h.cols() != g.cols() {
        return Err(Error::Dimension {
            op: "pdp_assemble",
            lhs: (g.rows(), g.cols()),
            rhs: (h.rows(), h.cols()),
        });
    }
    let y = lower_triangular_inverse(&cholesky_lower(g)?)?;
    let g_inv = matmul(&y.transpose(), &y)?;
    let gh = matmul(g, h)?;
    let hgh = matmul(h, &gh)?;
    let a22 = (&hgh + &g_inv).symmetrize();
    BlockPartition::from_blocks(g.symmetrize(), gh, a22)
}

/// Random `PDP^T` matrix of order `2n`: `R` standard normal, `H = (R + R^T) / 2`,
/// `G = R R^T + 1e-12 trace(R R^T) / n I`.
pub fn random_pdp(n: usize, seed: u64) -> Result<BlockPartition> {
    if n == 0 {
        return Err(Error::Domain("random PDP family needs n >= 1"));
    }
    let r = Prng::new(seed).normal_matrix(n, n);
    let h = r.symmetrize();
    let mut g = matmul(&r, &r.transpose())?;
    let trace: f64 = (0..n).map(|i| g[(i, i)]).sum();
    let ridge = 1e-12 * trace / n as f64;
    for i in 0..n {
        g[(i, i)] += ridge;
    }
    pdp_assemble(&g, &h)
}

/// Symmetric `(R + R^T) / 2` from the seeded stream, scaled to spectral norm `norm`.
pub fn random_symmetric(order: usize, seed: u64, norm: f64) -> Result<Matrix> {
    let e = Prng::new(seed).normal_matrix(order, order).symmetrize();
    let current = crate::spectral_norm(&e)?;
    if current == 0.0 {
        return Ok(e);
    }
    Ok(e.scale(norm / current))
}

/// A family of test matrices together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixFamily {
    /// Identity of order `2n`.
    Identity {
        n: usize,
    },
    Example1,
    /// `S(theta)^T S(theta)`.
    Tam {
        theta: f64,
    },
    /// `J^T S(theta)^T S(theta) J`.
    TamInverse {
        theta: f64,
    },
    Pascal {
        n: usize,
    },
    /// The perturbed member `A_hat` of the diagonal family.
    DiagT {
        t: f64,
        theta: f64,
    },
    RandomPdp {
        n: usize,
        seed: u64,
    },
}

impl MatrixFamily {
    pub fn name(&self) -> &'static str {
        match self {
            MatrixFamily::Identity { .. } => "identity",
            MatrixFamily::Example1 => "example1",
            MatrixFamily::Tam { .. } => "tam",
            MatrixFamily::TamInverse { .. } => "tam_inverse",
            MatrixFamily::Pascal { .. } => "pascal",
            MatrixFamily::DiagT { .. } => "diag_t",
            MatrixFamily::RandomPdp { .. } => "random_pdp",
        }
    }

    /// The parameter reported alongside results: `theta`, or the half-dimension for sized families.
    pub fn param(&self) -> f64 {
        match *self {
            MatrixFamily::Identity { n } | MatrixFamily::Pascal { n } => n as f64,
            MatrixFamily::RandomPdp { n, .. } => n as f64,
            MatrixFamily::Example1 => 0.0,
            MatrixFamily::Tam { theta }
            | MatrixFamily::TamInverse { theta }
            | MatrixFamily::DiagT { theta, .. } => theta,
        }
    }

    pub fn generate(&self) -> Result<Matrix> {
        Ok(match *self {
            MatrixFamily::Identity { n } => {
                if n == 0 {
                    return Err(Error::Domain("identity family needs n >= 1"));
                }
                Matrix::identity(2 * n)
            }
            MatrixFamily::Example1 => example1(),
            MatrixFamily::Tam { theta } => tam_spd(theta),
            MatrixFamily::TamInverse { theta } => tam_spd_inverse(theta),
            MatrixFamily::Pascal { n } => pascal_symplectic(n)?.assemble(),
            MatrixFamily::DiagT { t, theta } => diag_family(t, theta)?.1,
            MatrixFamily::RandomPdp { n, seed } => random_pdp(n, seed)?.assemble(),
        })
    }

    pub fn partition(&self) -> Result<BlockPartition> {
        match *self {
            MatrixFamily::Pascal { n } => pascal_symplectic(n),
            MatrixFamily::RandomPdp { n, seed } => random_pdp(n, seed),
            _ => BlockPartition::from_matrix(&self.generate()?),
        }
    }
}

//! Symplectic `LL^T` factorization of symmetric positive definite matrices.
//!
//! Given a symmetric positive definite `A` of order `2n`, partitioned into
//! `n x n` blocks, two algorithms compute a block lower triangular factor
//! `L = [L11 0; L21 L22]`:
//!
//! - [`algorithm_w1`] sets `L22 = L11^{-T}`. The factor is symplectic when `A` is,
//!   but the factorization error grows with the departure of `A` from symplecticity
//!   and with the conditioning of `A11`.
//! - [`algorithm_w2`] takes `L22` as the reverse Cholesky factor of the Schur
//!   complement and is backward stable for every SPD input.
//!
//! The crate also carries the dense kernels both algorithms are built from, the
//! loss-of-symplecticity diagnostics, numeric checkers for the associated error
//! and perturbation bounds, and deterministic generators for the test families.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

mod dense;
mod error;
mod factor;
pub mod symplectic;
pub mod testmat;

pub use dense::{
    condition_number, frobenius_norm, inverse, matmul, reverse_permute, spectral_norm,
    symmetric_eigenvalues, Matrix, ReversalPermutation, Shape, TriangularMatrix,
};
pub use error::{Error, Result, Stage};
pub use factor::{
    backward_substitute, cholesky_lower, forward_substitute, lower_triangular_inverse,
    reverse_cholesky_upper,
};
pub use symplectic::{
    algorithm_w1, algorithm_w2, factorize, gamma, omega, structure_matrix, Algorithm, Analysis,
    BlockFactor, BlockPartition, BoundCheckResult, GammaParams, Verdict,
};
pub use testmat::MatrixFamily;

/// Unit roundoff of IEEE binary64, `2^-53`.
pub const UNIT_ROUNDOFF: f64 = 1.0 / 9_007_199_254_740_992.0;

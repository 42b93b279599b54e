use core::cell::OnceCell;

use super::{
    algorithm_w1, algorithm_w2, distance_to_symplecticity, omega, omega_blocks, schur_complement,
    BlockFactor, BlockPartition,
};
use crate::dense::{matmul, spectral_norm, symmetric_eigenvalues, Matrix};
use crate::error::{Error, Result};
use crate::factor::{backward_substitute, forward_substitute};

/// Extreme eigenvalues of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Extremes {
    pub min: f64,
    pub max: f64,
}

impl Extremes {
    pub(crate) fn of(a: &Matrix) -> Result<Self> {
        let ev = symmetric_eigenvalues(a)?;
        Ok(Self {
            min: ev.first().copied().unwrap_or(0.0),
            max: ev.last().copied().unwrap_or(0.0),
        })
    }

    pub(crate) fn norm(&self) -> f64 {
        self.max.abs().max(self.min.abs())
    }

    /// `lambda_max / lambda_min`; fails unless positive definite.
    pub(crate) fn kappa(&self) -> Result<f64> {
        if self.min > 0.0 {
            Ok(self.max / self.min)
        } else {
            Err(Error::Singular { index: 0 })
        }
    }
}

type Cell<T> = OnceCell<Result<T>>;

fn get<T>(cell: &Cell<T>, f: impl FnOnce() -> Result<T>) -> Result<&T> {
    cell.get_or_init(f).as_ref().map_err(Clone::clone)
}

/// Every derived quantity of one block partition, computed on first use and cached.
///
/// Diagnostics and bound checks on the same matrix share one instance so that
/// each factorization and each spectral quantity is computed once.
pub struct Analysis<'a> {
    p: &'a BlockPartition,
    a: OnceCell<Matrix>,
    a_ext: Cell<Extremes>,
    a11_ext: Cell<Extremes>,
    w1: Cell<BlockFactor>,
    w2: Cell<BlockFactor>,
    l1: Cell<Matrix>,
    l2: Cell<Matrix>,
    schur: Cell<Matrix>,
    dist: Cell<f64>,
    res_w1: Cell<f64>,
    res_w2: Cell<f64>,
    omega_a_blocks: Cell<(Matrix, Matrix, Matrix)>,
    omega_a: Cell<f64>,
    omega_l1: Cell<f64>,
    omega_l2: Cell<f64>,
    w: Cell<Matrix>,
    inv_a11: Cell<Matrix>,
}

impl<'a> Analysis<'a> {
    pub fn new(p: &'a BlockPartition) -> Self {
        Self {
            p,
            a: OnceCell::new(),
            a_ext: OnceCell::new(),
            a11_ext: OnceCell::new(),
            w1: OnceCell::new(),
            w2: OnceCell::new(),
            l1: OnceCell::new(),
            l2: OnceCell::new(),
            schur: OnceCell::new(),
            dist: OnceCell::new(),
            res_w1: OnceCell::new(),
            res_w2: OnceCell::new(),
            omega_a_blocks: OnceCell::new(),
            omega_a: OnceCell::new(),
            omega_l1: OnceCell::new(),
            omega_l2: OnceCell::new(),
            w: OnceCell::new(),
            inv_a11: OnceCell::new(),
        }
    }

    pub fn partition(&self) -> &BlockPartition {
        self.p
    }

    /// Half-dimension.
    pub fn n(&self) -> usize {
        self.p.n()
    }

    /// The assembled matrix `A`.
    pub fn a(&self) -> &Matrix {
        self.a.get_or_init(|| self.p.assemble())
    }

    pub(crate) fn a_extremes(&self) -> Result<&Extremes> {
        get(&self.a_ext, || Extremes::of(self.a()))
    }

    pub(crate) fn a11_extremes(&self) -> Result<&Extremes> {
        get(&self.a11_ext, || Extremes::of(self.p.a11()))
    }

    /// `||A||_2`.
    pub fn norm_a(&self) -> Result<f64> {
        Ok(self.a_extremes()?.norm())
    }

    /// `kappa_2(A)`.
    pub fn kappa_a(&self) -> Result<f64> {
        self.a_extremes()?.kappa()
    }

    /// `||A11||_2`.
    pub fn norm_a11(&self) -> Result<f64> {
        Ok(self.a11_extremes()?.norm())
    }

    /// `||A11^{-1}||_2 = 1 / lambda_min(A11)`.
    pub fn norm_inv_a11(&self) -> Result<f64> {
        let e = self.a11_extremes()?;
        if e.min > 0.0 {
            Ok(1.0 / e.min)
        } else {
            Err(Error::Singular { index: 0 })
        }
    }

    /// `kappa_2(A11)`.
    pub fn kappa_a11(&self) -> Result<f64> {
        self.a11_extremes()?.kappa()
    }

    pub fn w1(&self) -> Result<&BlockFactor> {
        get(&self.w1, || algorithm_w1(self.p))
    }

    pub fn w2(&self) -> Result<&BlockFactor> {
        get(&self.w2, || algorithm_w2(self.p))
    }

    /// The assembled W1 factor `L1`.
    pub fn l1(&self) -> Result<&Matrix> {
        get(&self.l1, || Ok(self.w1()?.assemble()))
    }

    /// The assembled W2 factor `L2`.
    pub fn l2(&self) -> Result<&Matrix> {
        get(&self.l2, || Ok(self.w2()?.assemble()))
    }

    /// Computed Schur complement `S = A22 - L21 L21^T`.
    pub fn schur(&self) -> Result<&Matrix> {
        get(&self.schur, || schur_complement(self.p, self.w1()?.l21()))
    }

    /// `||A11^{-1} - S||_2`, evaluated through the W1 factor.
    pub fn dist(&self) -> Result<f64> {
        get(&self.dist, || distance_to_symplecticity(self.w1()?, self.p)).copied()
    }

    /// `||A - L1 L1^T||_2`.
    pub fn residual_w1(&self) -> Result<f64> {
        get(&self.res_w1, || residual_norm(self.a(), self.l1()?)).copied()
    }

    /// `||A - L2 L2^T||_2`.
    pub fn residual_w2(&self) -> Result<f64> {
        get(&self.res_w2, || residual_norm(self.a(), self.l2()?)).copied()
    }

    /// Blocks `(Omega11, Omega12, Omega22)` of `Omega(A)`.
    pub fn omega_a_blocks(&self) -> Result<&(Matrix, Matrix, Matrix)> {
        get(&self.omega_a_blocks, || omega_blocks(self.p))
    }

    /// `||Omega(A)||_2`.
    pub fn omega_a(&self) -> Result<f64> {
        get(&self.omega_a, || spectral_norm(&omega(self.a())?)).copied()
    }

    /// `||Omega(L1)||_2`.
    pub fn omega_l1(&self) -> Result<f64> {
        get(&self.omega_l1, || spectral_norm(&omega(self.l1()?)?)).copied()
    }

    /// `||Omega(L2)||_2`.
    pub fn omega_l2(&self) -> Result<f64> {
        get(&self.omega_l2, || spectral_norm(&omega(self.l2()?)?)).copied()
    }

    /// `W = A11^{-1} A12`, solved through the Cholesky factor of `A11`.
    pub fn w(&self) -> Result<&Matrix> {
        get(&self.w, || {
            let f = self.w1()?;
            let y = forward_substitute(f.l11(), self.p.a12())?;
            backward_substitute(&f.l11().transpose(), &y)
        })
    }

    /// `A11^{-1} = L11^{-T} L11^{-1}`, bitwise symmetric.
    pub fn inv_a11(&self) -> Result<&Matrix> {
        get(&self.inv_a11, || {
            let l22 = self.w1()?.l22().as_matrix();
            matmul(l22, &l22.transpose())
        })
    }
}

/// `||A - L L^T||_2`. Both terms are bitwise symmetric, so the difference is too.
pub(crate) fn residual_norm(a: &Matrix, l: &Matrix) -> Result<f64> {
    let r = a - &matmul(l, &l.transpose())?;
    spectral_norm(&r)
}

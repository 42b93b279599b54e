use alloc::vec;
use alloc::vec::Vec;

use super::analysis::{Analysis, Extremes};
use super::checks::{BoundCheckResult, SLACK};
use super::{algorithm_w2, BlockPartition};
use crate::dense::{frobenius_norm, spectral_norm, Matrix};
use crate::error::{Error, Result};
use crate::factor::{cholesky_lower, reverse_cholesky_upper, SYMMETRY_TOL};
use crate::UNIT_ROUNDOFF;

/// Which factorization a perturbation experiment exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerturbationKind {
    Cholesky,
    ReverseCholesky,
    /// The W2 factor `L2`; needs even order.
    L2Form,
}

impl PerturbationKind {
    fn id(self) -> &'static str {
        match self {
            PerturbationKind::Cholesky => "perturb_cholesky",
            PerturbationKind::ReverseCholesky => "perturb_reverse_cholesky",
            PerturbationKind::L2Form => "perturb_l2_form",
        }
    }

    fn factor(self, a: &Matrix) -> Result<Matrix> {
        match self {
            PerturbationKind::Cholesky => Ok(cholesky_lower(a)?.into_matrix()),
            PerturbationKind::ReverseCholesky => Ok(reverse_cholesky_upper(a)?.into_matrix()),
            PerturbationKind::L2Form => {
                Ok(algorithm_w2(&BlockPartition::from_matrix(a)?)?.assemble())
            }
        }
    }
}

fn check_perturbation_shape(a: &Matrix, e: &Matrix) -> Result<()> {
    if !a.is_square() || e.rows() != a.rows() || e.cols() != a.cols() {
        return Err(Error::Dimension {
            op: "perturbation",
            lhs: (a.rows(), a.cols()),
            rhs: (e.rows(), e.cols()),
        });
    }
    e.ensure_finite()?;
    let tol = SYMMETRY_TOL * frobenius_norm(e);
    let asym = e.max_asymmetry();
    if asym > tol {
        return Err(Error::NotSymmetric {
            asymmetry: asym,
            tolerance: tol,
        });
    }
    Ok(())
}

/// Factors `A` and `A + E` and compares `||dL||_F` with
/// `||L||_2 2^{-1/2} kappa(A) / (1 - ||A^{-1}|| ||E||) ||E||_F / ||A||_2`.
///
/// Skipped when `||A^{-1}|| ||E|| >= 1` or when `A + E` does not factor.
pub fn perturbation_experiment(
    a: &Matrix,
    e: &Matrix,
    kind: PerturbationKind,
) -> Result<BoundCheckResult> {
    check_perturbation_shape(a, e)?;
    let id = kind.id();
    let l = kind.factor(a)?;
    let ext = Extremes::of(a)?;
    let kappa = ext.kappa()?;
    let inv_norm = 1.0 / ext.min;
    let e_norm = spectral_norm(e)?;
    let eta = inv_norm * e_norm;
    if !(eta < 1.0) {
        return Ok(BoundCheckResult::skipped(id, "||A^{-1}|| ||E|| >= 1"));
    }
    let lp = match kind.factor(&(a + e)) {
        Ok(lp) => lp,
        Err(Error::PivotNotPositive { .. }) => {
            return Ok(BoundCheckResult::skipped(
                id,
                "A + E is not numerically SPD",
            ))
        }
        Err(other) => return Err(other),
    };
    let lhs = frobenius_norm(&(&lp - &l));
    let rhs = spectral_norm(&l)? * core::f64::consts::FRAC_1_SQRT_2 * kappa / (1.0 - eta)
        * frobenius_norm(e)
        / ext.norm();
    let floor = 100.0 * a.rows() as f64 * UNIT_ROUNDOFF * kappa * frobenius_norm(&l);
    Ok(BoundCheckResult::evaluate(id, lhs, rhs, SLACK, floor))
}

/// Whether `L2(A + E) - L2(A)` is block lower triangular with a lower triangular
/// `(1,1)` block and an upper triangular `(2,2)` block.
pub fn delta_l2_has_factor_form(a: &Matrix, e: &Matrix) -> Result<bool> {
    check_perturbation_shape(a, e)?;
    let l = PerturbationKind::L2Form.factor(a)?;
    let lp = PerturbationKind::L2Form.factor(&(a + e))?;
    let d = &lp - &l;
    let n = a.rows() / 2;
    let zero = |i: usize, j: usize| d[(i, j)] == 0.0;
    Ok((0..2 * n).all(|i| {
        (0..2 * n).all(|j| {
            let must_vanish = if i < n { j > i } else { j >= n && j < i };
            !must_vanish || zero(i, j)
        })
    }))
}

/// First-order perturbation of `A11^{-1}` and of the Schur complement under `A -> A + E`.
///
/// Both bounds are checked with slack `1e-6` and floor
/// `10 (||E|| / ||A||)^2 ||A|| max(1, ||W||^2) + 100 n eps ||A||`.
pub fn check_schur_perturbation(p: &BlockPartition, e: &Matrix) -> Result<Vec<BoundCheckResult>> {
    const INV_ID: &str = "schur_perturb_inverse";
    const S_ID: &str = "schur_perturb_complement";
    let an = Analysis::new(p);
    let a = an.a();
    check_perturbation_shape(a, e)?;
    let n = p.n();
    let norm_a = an.norm_a()?;
    let e_norm = spectral_norm(e)?;
    let skip_both = |why: &'static str| {
        vec![
            BoundCheckResult::skipped(INV_ID, why),
            BoundCheckResult::skipped(S_ID, why),
        ]
    };
    if !(e_norm <= 1e-6 * norm_a) {
        return Ok(skip_both("||E|| > 1e-6 ||A||"));
    }
    let pp = BlockPartition::from_matrix(&(a + e))?;
    let ap = Analysis::new(&pp);
    let (inv_p, s_p) = match (ap.inv_a11(), ap.schur()) {
        (Ok(i), Ok(s)) => (i, s),
        (Err(Error::PivotNotPositive { .. }), _) | (_, Err(Error::PivotNotPositive { .. })) => {
            return Ok(skip_both("A11 + E11 is not numerically SPD"))
        }
        (Err(other), _) | (_, Err(other)) => return Err(other),
    };

    let e11 = spectral_norm(&e.submatrix(0, 0, n, n))?;
    let e12 = spectral_norm(&e.submatrix(0, n, n, n))?;
    let e22 = spectral_norm(&e.submatrix(n, n, n, n))?;
    let inv11 = an.norm_inv_a11()?;
    let w = spectral_norm(an.w()?)?;
    let r = e_norm / norm_a;
    let wm = w.max(1.0);
    let floor = 10.0 * r * r * norm_a * wm * wm + 100.0 * n as f64 * UNIT_ROUNDOFF * norm_a;

    let d_inv = spectral_norm(&(inv_p - an.inv_a11()?).symmetrize())?;
    let d_s = spectral_norm(&(s_p - an.schur()?).symmetrize())?;
    Ok(vec![
        BoundCheckResult::evaluate(INV_ID, d_inv, inv11 * inv11 * e11, SLACK, floor),
        BoundCheckResult::evaluate(S_ID, d_s, e22 + w * w * e11 + 2.0 * w * e12, SLACK, floor),
    ])
}

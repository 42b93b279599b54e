use alloc::vec::Vec;

use super::Matrix;
use crate::error::{Error, Result};
use crate::UNIT_ROUNDOFF;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
///
/// A rotation at `(p, q)` is skipped once `|a_pq| <= eps * sqrt(|a_pp a_qq|)`;
/// the iteration stops after the first sweep that applies no rotation (or after
/// 100 sweeps). The relative skip test keeps small eigenvalues of positive
/// definite matrices accurate well beyond `eps * ||A||`.
pub fn symmetric_eigenvalues(a: &Matrix) -> Result<Vec<f64>> {
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::Dimension {
            op: "symmetric_eigenvalues",
            lhs: (a.rows(), a.cols()),
            rhs: (a.cols(), a.rows()),
        });
    }
    a.ensure_finite()?;
    let scale = a.max_abs();
    let tol = 1e-12 * super::frobenius_norm(a).max(f64::MIN_POSITIVE);
    let asym = a.max_asymmetry();
    if asym > tol {
        return Err(Error::NotSymmetric {
            asymmetry: asym,
            tolerance: tol,
        });
    }
    if scale == 0.0 {
        return Ok(alloc::vec![0.0; n]);
    }

    let mut w: Vec<f64> = a.symmetrize().into_vec();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = w[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = w[p * n + p];
                let aqq = w[q * n + q];
                if apq.abs() <= UNIT_ROUNDOFF * libm::sqrt(app.abs()) * libm::sqrt(aqq.abs()) {
                    continue;
                }
                rotated = true;
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let t = 1.0 / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = w[k * n + p];
                    let akq = w[k * n + q];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    w[k * n + p] = new_kp;
                    w[p * n + k] = new_kp;
                    w[k * n + q] = new_kq;
                    w[q * n + k] = new_kq;
                }
                w[p * n + p] = app - t * apq;
                w[q * n + q] = aqq + t * apq;
                w[p * n + q] = 0.0;
                w[q * n + p] = 0.0;
            }
        }
        if !rotated {
            break;
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| w[i * n + i]).collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

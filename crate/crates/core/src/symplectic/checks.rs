use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::analysis::{residual_norm, Analysis, Extremes};
use super::{assemble_omega, gamma_u, omega, BlockFactor, BlockPartition};
use crate::dense::{matmul, spectral_norm, Matrix};
use crate::error::Result;
use crate::factor::backward_substitute;
use crate::UNIT_ROUNDOFF;

/// Relative slack applied to every first-order bound.
pub(crate) const SLACK: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Holds,
    Violated,
    /// The bound's hypotheses are not met; the reason says which.
    Skipped(String),
}

/// Outcome of one numeric check `lhs <= rhs (1 + slack) + floor`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheckResult {
    pub bound_id: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub floor: f64,
    pub verdict: Verdict,
}

impl BoundCheckResult {
    /// Holds iff `lhs <= rhs (1 + slack) + floor`; NaN on either side is a violation.
    pub fn evaluate(bound_id: &'static str, lhs: f64, rhs: f64, slack: f64, floor: f64) -> Self {
        let verdict = if lhs <= rhs * (1.0 + slack) + floor {
            Verdict::Holds
        } else {
            Verdict::Violated
        };
        Self {
            bound_id,
            lhs,
            rhs,
            slack,
            floor,
            verdict,
        }
    }

    pub fn skipped(bound_id: &'static str, reason: impl Into<String>) -> Self {
        Self {
            bound_id,
            lhs: f64::NAN,
            rhs: f64::NAN,
            slack: 0.0,
            floor: 0.0,
            verdict: Verdict::Skipped(reason.into()),
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn is_violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self.verdict, Verdict::Skipped(_))
    }
}

/// `100 n eps`, the generic rounding allowance of the checks.
fn base(n: usize) -> f64 {
    100.0 * n as f64 * UNIT_ROUNDOFF
}

fn w2_backward_result(n: usize, residual: f64, norm_a: f64) -> BoundCheckResult {
    const ID: &str = "w2_backward";
    let c = 4.0 * n as f64 * gamma_u(n + 2);
    if !(c < 1.0) {
        return BoundCheckResult::skipped(ID, "4n gamma_{n+2} >= 1");
    }
    BoundCheckResult::evaluate(ID, residual, c * norm_a, 0.0, 0.0)
}

/// Spectral norm of a symmetric matrix known to be symmetric up to rounding.
fn sym_norm(a: &Matrix) -> Result<f64> {
    spectral_norm(&a.symmetrize())
}

/// `|| |a| |b| ||_2`, the scale of the rounding error in the computed product `a b`.
fn abs_product_norm(a: &Matrix, b: &Matrix) -> Result<f64> {
    spectral_norm(&matmul(&a.map(f64::abs), &b.map(f64::abs))?)
}

/// First-order relative uncertainty of a computed `kappa_2`: a symmetric
/// perturbation of relative size `4n gamma_{n+2}` moves `kappa` by up to twice
/// that times `kappa`, counted for both condition numbers being compared.
fn kappa_uncertainty(n: usize, kappa: f64) -> f64 {
    16.0 * n as f64 * gamma_u(n + 2) * kappa
}

impl Analysis<'_> {
    /// `||A - L2 L2^T|| <= 4n gamma_{n+2} ||A||`, no slack and no floor.
    pub fn check_w2_backward(&self) -> Result<BoundCheckResult> {
        Ok(w2_backward_result(
            self.n(),
            self.residual_w2()?,
            self.norm_a()?,
        ))
    }

    /// `||A - L1 L1^T|| <= d (1 + 3n g kappa(A11)) + 8n g kappa(A11) ||A||`
    /// with `d = ||A11^{-1} - S||` and `g = gamma_{n+1}`.
    pub fn check_w1_error_bound(&self) -> Result<BoundCheckResult> {
        let n = self.n() as f64;
        let g = gamma_u(self.n() + 1);
        let k11 = self.kappa_a11()?;
        let norm_a = self.norm_a()?;
        let rhs = self.dist()? * (1.0 + 3.0 * n * g * k11) + 8.0 * n * g * k11 * norm_a;
        Ok(BoundCheckResult::evaluate(
            "w1_error_bound",
            self.residual_w1()?,
            rhs,
            SLACK,
            base(self.n()) * norm_a,
        ))
    }

    /// Loss of symplecticity of the two factors relative to `A` and to each other.
    pub fn check_omega_factor_bounds(&self) -> Result<Vec<BoundCheckResult>> {
        let n = self.n();
        let om_a = self.omega_a()?;
        let om1 = self.omega_l1()?;
        let om2 = self.omega_l2()?;
        let inv11 = self.norm_inv_a11()?;
        let floor = base(n) * 1f64.max(inv11 * om_a);

        // Omega(L1) of the computed factor departs from its exact-arithmetic value
        // through the substitution residuals of L21^T and L22^T, each amplified by
        // kappa(L11), and through the product L1^T J L1 itself.
        let f1 = self.w1()?;
        let l1 = self.l1()?;
        let l11_abs = f1.l11().as_matrix();
        let gn = gamma_u(n);
        let r_sub = gn * abs_product_norm(l11_abs, &f1.l21().transpose())?;
        let r_inv = gn * abs_product_norm(l11_abs, &f1.l22().as_matrix().transpose())?;
        let r_prod = gamma_u(2 * n) * abs_product_norm(&l1.transpose(), l1)?;
        let kappa_l11 = libm::sqrt(self.kappa_a11()?);
        let fact2_floor = floor + 2.0 * kappa_l11 * (r_sub + r_inv) + r_prod;

        let f2 = self.w2()?;
        let l11 = f2.l11().as_matrix();
        let l11t = l11.transpose();
        let mut e = matmul(&l11t, f2.l22().as_matrix())?;
        for i in 0..n {
            e[(i, i)] -= 1.0;
        }
        let inverse_residual = spectral_norm(&e)?;

        let l2_norm = spectral_norm(self.l2()?)?;
        let ordering_floor = base(n) * 1f64.max(l2_norm * l2_norm);

        let mut out = vec![
            BoundCheckResult::evaluate(
                "omega_l1_vs_omega_a",
                om1,
                inv11 * om_a,
                SLACK,
                fact2_floor,
            ),
            BoundCheckResult::evaluate("omega_l1_le_omega_l2", om1, om2, SLACK, ordering_floor),
            BoundCheckResult::evaluate(
                "omega_l2_le_omega_l1_plus_inverse",
                om2,
                om1 + inverse_residual,
                SLACK,
                ordering_floor,
            ),
        ];

        // rho = ||L11^T S L11 - I||, the symmetric similarity of A11 (S - A11^{-1})
        // with L11^T A11^{-1} L11 = I applied exactly.
        let s_mat = self.schur()?;
        let mut m = matmul(&matmul(&l11t, s_mat)?, l11)?;
        for i in 0..n {
            m[(i, i)] -= 1.0;
        }
        let rho = sym_norm(&m)?;
        const ID: &str = "inverse_residual_vs_rho";
        out.push(if rho > 0.5 {
            BoundCheckResult::skipped(ID, "rho(A11 (S - A11^{-1})) > 1/2")
        } else {
            // U22 is the exact reverse Cholesky factor of S + F with ||F|| <= 2n gamma_{n+1} ||S||,
            // and forming L11^T S L11 adds at most n gamma_{n+1} ||A11|| ||S||.
            let c = libm::sqrt(2.0 * n as f64);
            let s_norm = sym_norm(s_mat)?;
            let rounding = c * 3.0 * n as f64 * gamma_u(n + 1) * self.norm_a11()? * s_norm
                + gn * abs_product_norm(&l11t, f2.l22().as_matrix())?;
            BoundCheckResult::evaluate(ID, inverse_residual, c * rho, SLACK, floor + rounding)
        });
        Ok(out)
    }

    /// Condition-number relations: the bound through `Omega(A)`, `kappa(L2)^2 = kappa(A)`,
    /// the bound on `||W||^2`, and the bound on `kappa(L1 L1^T)`.
    pub fn check_condition_bounds(&self) -> Result<Vec<BoundCheckResult>> {
        let norm_a = self.norm_a()?;
        let kappa_a = self.kappa_a()?;
        let rel_floor = 1e-8 + kappa_uncertainty(self.n(), kappa_a);
        let om_a = self.omega_a()?;
        let mut out = Vec::with_capacity(4);

        const K_ID: &str = "kappa_vs_omega";
        out.push(if om_a >= 1.0 {
            BoundCheckResult::skipped(K_ID, "||Omega(A)|| >= 1")
        } else {
            let rhs = norm_a * norm_a / (1.0 - om_a);
            BoundCheckResult::evaluate(K_ID, kappa_a, rhs, SLACK, rel_floor * rhs)
        });

        let l2 = self.l2()?;
        let k_l2 = crate::dense::condition_number(l2)?;
        out.push(BoundCheckResult::evaluate(
            "kappa_l2_squared",
            libm::fabs(k_l2 * k_l2 / kappa_a - 1.0),
            0.0,
            SLACK,
            rel_floor,
        ));

        let w_norm = spectral_norm(self.w()?)?;
        let rhs = self.norm_inv_a11()? * Extremes::of(self.partition().a22())?.norm();
        out.push(BoundCheckResult::evaluate(
            "w_norm_squared",
            w_norm * w_norm,
            rhs,
            SLACK,
            1e-8 * rhs,
        ));

        // rho(S^{-1} (A11^{-1} - S)) through U^{-1} (A11^{-1} - S) U^{-T}, S = U U^T
        const P_ID: &str = "kappa_perturbed";
        let u = self.w2()?.l22();
        let d = self.inv_a11()? - self.schur()?;
        let x = backward_substitute(u, &d)?;
        let m = backward_substitute(u, &x.transpose())?;
        let rho = sym_norm(&m)?;
        out.push(if rho >= 1.0 {
            BoundCheckResult::skipped(P_ID, "rho(S^{-1} (A11^{-1} - S)) >= 1")
        } else {
            let lhs = Extremes::of(&matmul(self.l1()?, &self.l1()?.transpose())?)?.kappa()?;
            let rhs = kappa_a / (1.0 - rho) * (1.0 + self.dist()? / norm_a);
            BoundCheckResult::evaluate(P_ID, lhs, rhs, SLACK, rel_floor * rhs)
        });
        Ok(out)
    }

    /// Algebraic identities relating `Omega(A)`, `W` and `A11^{-1} - S`, and the
    /// norm bounds derived from them.
    pub fn check_identities(&self) -> Result<Vec<BoundCheckResult>> {
        let p = self.partition();
        let n = self.n();
        let norm_a = self.norm_a()?;
        let inv11 = self.norm_inv_a11()?;
        let (o11, o12, o22) = self.omega_a_blocks()?;
        let mut out = Vec::with_capacity(5);

        let full = omega(self.a())?;
        let diff = &assemble_omega(o11, o12, o22)? - &full;
        out.push(BoundCheckResult::evaluate(
            "omega_block_reassembly",
            diff.max_abs(),
            0.0,
            SLACK,
            1e-13 * norm_a * norm_a,
        ));

        let w = self.w()?;
        let w_norm = spectral_norm(w)?;
        let norm_a11 = self.norm_a11()?;
        // Omega11 = A11 (W^T - W) A11, compared at the scale of its right-hand side
        let m1 = matmul(&matmul(p.a11(), &(&w.transpose() - w))?, p.a11())?;
        out.push(BoundCheckResult::evaluate(
            "omega11_identity",
            (&m1 - o11).max_abs(),
            0.0,
            SLACK,
            1e-10 * norm_a11 * norm_a11 * w_norm.max(1.0),
        ));
        let tol = 1e-10 * inv11 * norm_a;
        // A11^{-1} - S = A11^{-1} (Omega11 W - Omega12)
        let inv = self.inv_a11()?;
        let m2 = matmul(inv, &(&matmul(o11, w)? - o12))?;
        let gap = inv - self.schur()?;
        out.push(BoundCheckResult::evaluate(
            "schur_gap_identity",
            (&m2 - &gap).max_abs(),
            0.0,
            SLACK,
            tol,
        ));

        let dist = self.dist()?;
        out.push(BoundCheckResult::evaluate(
            "inv_a11_vs_gap",
            inv11,
            norm_a + dist,
            SLACK,
            base(n) * norm_a,
        ));
        out.push(BoundCheckResult::evaluate(
            "gap_vs_omega",
            dist,
            inv11 * (w_norm + 1.0) * self.omega_a()?,
            SLACK,
            base(n) * inv11 * norm_a,
        ));
        Ok(out)
    }
}

/// Backward error of Algorithm W2 against `4n gamma_{n+2} ||A||`.
pub fn check_w2_backward(p: &BlockPartition) -> Result<BoundCheckResult> {
    Analysis::new(p).check_w2_backward()
}

/// As [`check_w2_backward`], for a factor supplied by the caller.
pub fn check_w2_backward_with(p: &BlockPartition, f: &BlockFactor) -> Result<BoundCheckResult> {
    let a = p.assemble();
    let residual = residual_norm(&a, &f.assemble())?;
    Ok(w2_backward_result(p.n(), residual, spectral_norm(&a)?))
}

/// Factorization error of Algorithm W1 against its first-order bound.
pub fn check_w1_error_bound(p: &BlockPartition) -> Result<BoundCheckResult> {
    Analysis::new(p).check_w1_error_bound()
}

pub fn check_omega_factor_bounds(p: &BlockPartition) -> Result<Vec<BoundCheckResult>> {
    Analysis::new(p).check_omega_factor_bounds()
}

pub fn check_condition_bounds(p: &BlockPartition) -> Result<Vec<BoundCheckResult>> {
    Analysis::new(p).check_condition_bounds()
}

pub fn check_identities(p: &BlockPartition) -> Result<Vec<BoundCheckResult>> {
    Analysis::new(p).check_identities()
}

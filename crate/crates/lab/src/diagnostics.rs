use symfact::symplectic::Analysis;
use symfact::{BlockPartition, Matrix, MatrixFamily};

/// One column of the result tables.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsRow {
    pub family: String,
    pub param: f64,
    /// Half-dimension.
    pub n: usize,
    pub kappa2_a: f64,
    pub norm2_a: f64,
    pub kappa2_a11: f64,
    pub norm2_a11: f64,
    pub norm2_inv_a11: f64,
    /// `||A11^{-1} - S||_2`.
    pub dist_sympl: f64,
    /// `dist_sympl / norm2_a`.
    pub dist_sympl_rel: f64,
    /// `||A - L1 L1^T||_2 / ||A||_2`.
    pub relerr_w1: f64,
    /// `||A - L2 L2^T||_2 / ||A||_2`.
    pub relerr_w2: f64,
    pub omega_a: f64,
    pub omega_l1: f64,
    pub omega_l2: f64,
}

impl DiagnosticsRow {
    fn nan(family: &str, param: f64, n: usize) -> Self {
        Self {
            family: family.to_owned(),
            param,
            n,
            kappa2_a: f64::NAN,
            norm2_a: f64::NAN,
            kappa2_a11: f64::NAN,
            norm2_a11: f64::NAN,
            norm2_inv_a11: f64::NAN,
            dist_sympl: f64::NAN,
            dist_sympl_rel: f64::NAN,
            relerr_w1: f64::NAN,
            relerr_w2: f64::NAN,
            omega_a: f64::NAN,
            omega_l1: f64::NAN,
            omega_l2: f64::NAN,
        }
    }

    /// The twelve numeric fields in CSV order, after `family`, `param` and `n`.
    pub fn values(&self) -> [f64; 12] {
        [
            self.kappa2_a,
            self.norm2_a,
            self.kappa2_a11,
            self.norm2_a11,
            self.norm2_inv_a11,
            self.dist_sympl,
            self.dist_sympl_rel,
            self.relerr_w1,
            self.relerr_w2,
            self.omega_a,
            self.omega_l1,
            self.omega_l2,
        ]
    }

    pub(crate) fn from_values(family: String, param: f64, n: usize, v: [f64; 12]) -> Self {
        let [kappa2_a, norm2_a, kappa2_a11, norm2_a11, norm2_inv_a11, dist_sympl, dist_sympl_rel, relerr_w1, relerr_w2, omega_a, omega_l1, omega_l2] =
            v;
        Self {
            family,
            param,
            n,
            kappa2_a,
            norm2_a,
            kappa2_a11,
            norm2_a11,
            norm2_inv_a11,
            dist_sympl,
            dist_sympl_rel,
            relerr_w1,
            relerr_w2,
            omega_a,
            omega_l1,
            omega_l2,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.values().iter().all(|x| x.is_finite())
    }
}

/// A row together with the first failure met while filling it.
///
/// Fields that depend on a failed computation are NaN; the rest are still filled.
#[derive(Debug, Clone)]
pub struct Diagnosis {
    pub row: DiagnosticsRow,
    pub failure: Option<symfact::Error>,
}

impl Diagnosis {
    pub fn is_ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Fills every field from a cached analysis; a failing field becomes NaN.
fn fill(an: &Analysis<'_>, family: &str, param: f64) -> Diagnosis {
    let mut failure = None;
    let mut take = |r: symfact::Result<f64>| match r {
        Ok(x) => x,
        Err(e) => {
            failure.get_or_insert(e);
            f64::NAN
        }
    };
    let norm2_a = take(an.norm_a());
    let dist_sympl = take(an.dist());
    let row = DiagnosticsRow {
        family: family.to_owned(),
        param,
        n: an.n(),
        kappa2_a: take(an.kappa_a()),
        norm2_a,
        kappa2_a11: take(an.kappa_a11()),
        norm2_a11: take(an.norm_a11()),
        norm2_inv_a11: take(an.norm_inv_a11()),
        dist_sympl,
        dist_sympl_rel: dist_sympl / norm2_a,
        relerr_w1: take(an.residual_w1()) / norm2_a,
        relerr_w2: take(an.residual_w2()) / norm2_a,
        omega_a: take(an.omega_a()),
        omega_l1: take(an.omega_l1()),
        omega_l2: take(an.omega_l2()),
    };
    Diagnosis { row, failure }
}

pub fn diagnose_partition(p: &BlockPartition, family: &str, param: f64) -> Diagnosis {
    fill(&Analysis::new(p), family, param)
}

/// Runs both algorithms on `a` and collects every table quantity.
pub fn diagnose(a: &Matrix, family: &str, param: f64) -> Diagnosis {
    match BlockPartition::from_matrix(a) {
        Ok(p) => diagnose_partition(&p, family, param),
        Err(e) => Diagnosis {
            row: DiagnosticsRow::nan(family, param, a.rows() / 2),
            failure: Some(e),
        },
    }
}

fn half_dimension(f: MatrixFamily) -> usize {
    match f {
        MatrixFamily::Identity { n } | MatrixFamily::Pascal { n } => n,
        MatrixFamily::RandomPdp { n, .. } => n,
        _ => 2,
    }
}

pub fn diagnose_family(f: MatrixFamily) -> Diagnosis {
    match f.partition() {
        Ok(p) => diagnose_partition(&p, f.name(), f.param()),
        Err(e) => Diagnosis {
            row: DiagnosticsRow::nan(f.name(), f.param(), half_dimension(f)),
            failure: Some(e),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_row() {
        let d = diagnose(&Matrix::identity(4), "identity", 2.0);
        assert!(d.is_ok());
        let r = &d.row;
        assert_eq!(r.n, 2);
        assert_eq!((r.kappa2_a, r.kappa2_a11, r.norm2_a), (1.0, 1.0, 1.0));
        for x in [r.dist_sympl, r.relerr_w1, r.relerr_w2, r.omega_a, r.omega_l1, r.omega_l2] {
            assert!(x.abs() <= 1e-15);
        }
    }

    #[test]
    fn failure_marks_fields() {
        // A11 SPD but the whole matrix is indefinite: the Schur complement fails
        let a = Matrix::from_rows(&[[1.0, 2.0], [2.0, 1.0]]);
        let d = diagnose(&a, "bad", 0.0);
        assert!(!d.is_ok());
        assert!(d.row.relerr_w2.is_nan());
        assert!(!d.row.is_complete());
        assert_eq!(d.row.norm2_a11, 1.0);
    }

    #[test]
    fn odd_order_is_a_nan_row() {
        let d = diagnose(&Matrix::identity(3), "odd", 0.0);
        assert!(d.failure.is_some());
        assert!(d.row.values().iter().all(|x| x.is_nan()));
    }

    #[test]
    fn deterministic() {
        let f = MatrixFamily::RandomPdp { n: 6, seed: 9 };
        assert_eq!(diagnose_family(f).row, diagnose_family(f).row);
    }
}

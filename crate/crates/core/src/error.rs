use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Which factorization a failing pivot belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    /// A plain Cholesky / reverse Cholesky call on the whole argument.
    Whole,
    /// Cholesky of the leading block `A11`.
    LeadingBlock,
    /// Reverse Cholesky of the Schur complement.
    SchurComplement,
}

#[derive(Debug, Clone, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// Operand shapes are incompatible.
    Dimension {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },
    /// NaN or infinity at the given (0-based) position.
    InvalidEntry { row: usize, col: usize },
    /// Input asymmetry exceeds the tolerance of a symmetric routine.
    NotSymmetric { asymmetry: f64, tolerance: f64 },
    /// Pivot `index` (1-based) was not positive: the matrix is not numerically SPD.
    PivotNotPositive { index: usize, stage: Stage },
    /// Zero pivot / diagonal at `index` (1-based).
    Singular { index: usize },
    /// Loss of symplecticity exceeds the requested tolerance.
    NotSymplectic { omega: f64, tolerance: f64 },
    /// Argument outside the domain of the function.
    Domain(&'static str),
    /// Operation applied to the wrong kind of object.
    Usage(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension { op, lhs, rhs } => write!(
                f,
                "{op}: incompatible dimensions {}x{} and {}x{}",
                lhs.0, lhs.1, rhs.0, rhs.1
            ),
            Error::InvalidEntry { row, col } => {
                write!(f, "non-finite entry at ({}, {})", row + 1, col + 1)
            }
            Error::NotSymmetric {
                asymmetry,
                tolerance,
            } => write!(
                f,
                "matrix is not symmetric: max |a_ij - a_ji| = {asymmetry:e} > {tolerance:e}"
            ),
            Error::PivotNotPositive { index, stage } => {
                let what = match stage {
                    Stage::Whole => "matrix",
                    Stage::LeadingBlock => "leading block A11",
                    Stage::SchurComplement => "Schur complement",
                };
                write!(
                    f,
                    "{what} is not positive definite: pivot {index} is not positive"
                )
            }
            Error::Singular { index } => write!(f, "matrix is singular at pivot {index}"),
            Error::NotSymplectic { omega, tolerance } => write!(
                f,
                "matrix is not symplectic: ||A^T J A - J|| = {omega:e} exceeds {tolerance:e}"
            ),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

impl Error {
    /// Re-tags a pivot failure with the factorization stage it came from.
    pub(crate) fn at_stage(self, stage: Stage) -> Self {
        match self {
            Error::PivotNotPositive { index, .. } => Error::PivotNotPositive { index, stage },
            other => other,
        }
    }
}

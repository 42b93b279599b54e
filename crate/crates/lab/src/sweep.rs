use rayon::prelude::*;
use symfact::MatrixFamily;

use crate::diagnostics::{diagnose_family, Diagnosis};
use crate::error::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    /// `S(theta)^T S(theta)` for theta in {3, 4, 6, 7}.
    Tam,
    /// Its structured inverse for the same thetas.
    TamInverse,
    /// The Pascal family for n in {6, 8, 10, 12}.
    Pascal,
}

impl TableId {
    pub fn from_number(id: u8) -> Result<Self> {
        match id {
            1 => Ok(TableId::Tam),
            2 => Ok(TableId::TamInverse),
            3 => Ok(TableId::Pascal),
            _ => Err(LabError::Usage(format!("no table {id}; expected 1, 2 or 3"))),
        }
    }

    pub fn families(self) -> Vec<MatrixFamily> {
        const THETAS: [f64; 4] = [3.0, 4.0, 6.0, 7.0];
        match self {
            TableId::Tam => THETAS.map(|theta| MatrixFamily::Tam { theta }).to_vec(),
            TableId::TamInverse => THETAS.map(|theta| MatrixFamily::TamInverse { theta }).to_vec(),
            TableId::Pascal => [6, 8, 10, 12].map(|n| MatrixFamily::Pascal { n }).to_vec(),
        }
    }
}

/// Diagnostics for every column of a table, in table order.
pub fn run_table(id: TableId) -> Vec<Diagnosis> {
    id.families().into_iter().map(diagnose_family).collect()
}

/// The member of `template`'s family with half-dimension `n`; random families take `seed`.
fn sized(template: MatrixFamily, n: usize, seed: u64) -> Result<MatrixFamily> {
    match template {
        MatrixFamily::Identity { .. } => Ok(MatrixFamily::Identity { n }),
        MatrixFamily::Pascal { .. } => Ok(MatrixFamily::Pascal { n }),
        MatrixFamily::RandomPdp { .. } => Ok(MatrixFamily::RandomPdp { n, seed }),
        other => Err(LabError::Usage(format!(
            "family {} has a fixed size and cannot be swept",
            other.name()
        ))),
    }
}

/// One row per `n` in `n_from..=n_to`, ordered by `n`.
///
/// Each row regenerates its matrix from `seed` alone, so rows are independent
/// and are computed in parallel. A failing row is NaN-marked and the sweep continues.
pub fn run_sweep(
    template: MatrixFamily,
    n_from: usize,
    n_to: usize,
    seed: u64,
) -> Result<Vec<Diagnosis>> {
    if n_from == 0 || n_from > n_to {
        return Err(LabError::Usage(format!(
            "sweep range {n_from}..={n_to} must satisfy 1 <= from <= to"
        )));
    }
    let members = (n_from..=n_to)
        .map(|n| sized(template, n, seed))
        .collect::<Result<Vec<_>>>()?;
    Ok(members.into_par_iter().map(diagnose_family).collect())
}

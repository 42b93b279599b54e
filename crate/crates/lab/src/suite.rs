use std::fmt::Write as _;

use symfact::symplectic::{
    check_schur_perturbation, check_w2_backward_with, delta_l2_has_factor_form,
    perturbation_experiment, Analysis, PerturbationKind,
};
use symfact::testmat::random_symmetric;
use symfact::{
    BlockFactor, BlockPartition, BoundCheckResult, Error, MatrixFamily, Shape, TriangularMatrix,
    Verdict,
};

use crate::exit;
use crate::report::format_sci;

/// Relative sizes `||E|| / ||A||` of the perturbation experiments.
pub const PERTURBATION_LEVELS: [f64; 2] = [1e-10, 1e-8];
/// Seed of the symmetric perturbation direction.
pub const PERTURBATION_SEED: u64 = 17;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CheckScope {
    All,
    Family(MatrixFamily),
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CheckOptions {
    /// Scale the computed `L22` of W2 by `1 + rel` before the backward-error check.
    pub inject_fault: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckEntry {
    pub fixture: String,
    pub result: BoundCheckResult,
    /// Set when the check could not run; the result is then Violated.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckSuiteReport {
    pub entries: Vec<CheckEntry>,
    pub holds: usize,
    pub violated: usize,
    pub skipped: usize,
    /// 0 iff nothing was violated.
    pub exit_code: i32,
}

impl CheckSuiteReport {
    fn new(entries: Vec<CheckEntry>) -> Self {
        let count = |f: fn(&BoundCheckResult) -> bool| entries.iter().filter(|e| f(&e.result)).count();
        let holds = count(BoundCheckResult::holds);
        let violated = count(BoundCheckResult::is_violated);
        let skipped = count(BoundCheckResult::is_skipped);
        Self {
            entries,
            holds,
            violated,
            skipped,
            exit_code: if violated == 0 {
                exit::SUCCESS
            } else {
                exit::VIOLATED
            },
        }
    }

    pub fn results(&self) -> impl Iterator<Item = &BoundCheckResult> {
        self.entries.iter().map(|e| &e.result)
    }

    pub fn violations(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| e.result.is_violated())
    }

    /// One line per entry (or per violation unless `verbose`), then the counts.
    pub fn render(&self, verbose: bool) -> String {
        let mut out = String::new();
        for e in &self.entries {
            if !verbose && !e.result.is_violated() {
                continue;
            }
            let r = &e.result;
            let verdict = match &r.verdict {
                Verdict::Holds => "holds".to_owned(),
                Verdict::Violated => "VIOLATED".to_owned(),
                Verdict::Skipped(why) => format!("skipped ({why})"),
            };
            let _ = write!(
                out,
                "{:<34} {:<34} lhs={} rhs={} floor={} {verdict}",
                e.fixture,
                r.bound_id,
                format_sci(r.lhs),
                format_sci(r.rhs),
                format_sci(r.floor),
            );
            if let Some(f) = &e.failure {
                let _ = write!(out, " [{f}]");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{} checks: {} hold, {} violated, {} skipped",
            self.entries.len(),
            self.holds,
            self.violated,
            self.skipped
        );
        out
    }
}

/// Example 1, both Tam families, the Pascal family, the perturbed diagonal
/// example, and random PDP^T matrices.
pub fn fixture_set() -> Vec<MatrixFamily> {
    let mut v = vec![MatrixFamily::Example1];
    for theta in [3.0, 4.0, 6.0, 7.0] {
        v.push(MatrixFamily::Tam { theta });
    }
    for theta in [3.0, 4.0, 6.0, 7.0] {
        v.push(MatrixFamily::TamInverse { theta });
    }
    for n in [2, 6, 8, 10, 12] {
        v.push(MatrixFamily::Pascal { n });
    }
    v.push(MatrixFamily::DiagT {
        t: 1e6,
        theta: 1e-10,
    });
    for n in [5, 10, 20] {
        for seed in [1, 2, 3] {
            v.push(MatrixFamily::RandomPdp { n, seed });
        }
    }
    v
}

fn label(f: MatrixFamily) -> String {
    match f {
        MatrixFamily::Identity { n } => format!("identity(n={n})"),
        MatrixFamily::Example1 => "example1".to_owned(),
        MatrixFamily::Tam { theta } => format!("tam(theta={theta})"),
        MatrixFamily::TamInverse { theta } => format!("tam_inverse(theta={theta})"),
        MatrixFamily::Pascal { n } => format!("pascal(n={n})"),
        MatrixFamily::DiagT { t, theta } => format!("diag_t(t={t:e}, theta={theta:e})"),
        MatrixFamily::RandomPdp { n, seed } => format!("random_pdp(n={n}, seed={seed})"),
    }
}

/// The W2 factor with `L22` scaled by `1 + rel`.
fn corrupt(f: &BlockFactor, rel: f64) -> symfact::Result<BlockFactor> {
    let u = f.l22().as_matrix().scale(1.0 + rel);
    BlockFactor::from_parts(
        f.l11().clone(),
        f.l21().clone(),
        TriangularMatrix::from_triangle(Shape::Upper, &u),
        f.algorithm(),
    )
}

struct Collector {
    fixture: String,
    entries: Vec<CheckEntry>,
}

impl Collector {
    fn one(&mut self, r: symfact::Result<BoundCheckResult>) {
        self.many(r.map(|r| vec![r]));
    }

    fn many(&mut self, r: symfact::Result<Vec<BoundCheckResult>>) {
        match r {
            Ok(rs) => {
                for result in rs {
                    self.entries.push(CheckEntry {
                        fixture: self.fixture.clone(),
                        result,
                        failure: None,
                    });
                }
            }
            Err(e) => self.fail(e),
        }
    }

    fn fail(&mut self, e: Error) {
        self.entries.push(CheckEntry {
            fixture: self.fixture.clone(),
            result: BoundCheckResult::evaluate("numerical_failure", f64::NAN, 0.0, 0.0, 0.0),
            failure: Some(e.to_string()),
        });
    }
}

fn check_partition(c: &mut Collector, p: &BlockPartition, opts: CheckOptions) {
    let an = Analysis::new(p);
    match opts.inject_fault {
        None => c.one(an.check_w2_backward()),
        Some(rel) => c.one(
            an.w2()
                .and_then(|f| corrupt(f, rel))
                .and_then(|bad| check_w2_backward_with(p, &bad)),
        ),
    }
    c.one(an.check_w1_error_bound());
    c.many(an.check_omega_factor_bounds());
    c.many(an.check_condition_bounds());
    c.many(an.check_identities());

    let a = an.a();
    let norm = match an.norm_a() {
        Ok(x) => x,
        Err(e) => return c.fail(e),
    };
    for rel in PERTURBATION_LEVELS {
        let e = match random_symmetric(a.rows(), PERTURBATION_SEED, rel * norm) {
            Ok(e) => e,
            Err(err) => return c.fail(err),
        };
        for kind in [
            PerturbationKind::Cholesky,
            PerturbationKind::ReverseCholesky,
            PerturbationKind::L2Form,
        ] {
            c.one(perturbation_experiment(a, &e, kind));
        }
        c.many(check_schur_perturbation(p, &e));
        const FORM_ID: &str = "delta_l2_form";
        c.one(match delta_l2_has_factor_form(a, &e) {
            Ok(same) => Ok(BoundCheckResult::evaluate(
                FORM_ID,
                if same { 0.0 } else { 1.0 },
                0.0,
                0.0,
                0.0,
            )),
            Err(Error::PivotNotPositive { .. }) => Ok(BoundCheckResult::skipped(
                FORM_ID,
                "A + E is not numerically SPD",
            )),
            Err(err) => Err(err),
        });
    }
}

fn check_family(f: MatrixFamily, opts: CheckOptions) -> Vec<CheckEntry> {
    let mut c = Collector {
        fixture: label(f),
        entries: Vec::new(),
    };
    match f.partition() {
        Ok(p) => check_partition(&mut c, &p, opts),
        Err(e) => c.fail(e),
    }
    c.entries
}

/// Runs every bound check over the scope's fixtures, including the
/// perturbation experiments at each level in [`PERTURBATION_LEVELS`].
pub fn run_checks(scope: CheckScope) -> CheckSuiteReport {
    run_checks_with(scope, CheckOptions::default())
}

pub fn run_checks_with(scope: CheckScope, opts: CheckOptions) -> CheckSuiteReport {
    let fixtures = match scope {
        CheckScope::All => fixture_set(),
        CheckScope::Family(f) => vec![f],
    };
    CheckSuiteReport::new(
        fixtures
            .into_iter()
            .flat_map(|f| check_family(f, opts))
            .collect(),
    )
}

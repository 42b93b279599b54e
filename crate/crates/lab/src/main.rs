use std::fs::File;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symfact::{factorize, Algorithm, BlockPartition, MatrixFamily};
use symfact_lab::{
    diagnose, diagnose_family, exit, format_table, read_matrix, run_checks_with, run_sweep,
    run_table, write_csv, write_matrix, CheckOptions, CheckScope, Diagnosis, LabError, TableId,
};

#[derive(Parser)]
#[command(name = "symfact", version, about = "Symplectic LL^T factorization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a test matrix and write it in the text format.
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Factor a matrix file with W1 or W2 and write the assembled factor.
    Factor {
        #[arg(long, value_enum)]
        alg: Alg,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the diagnostics of one matrix.
    Diagnose {
        #[command(flatten)]
        family: OptionalFamily,
        #[arg(long = "in", conflicts_with = "family")]
        input: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Regenerate one of the three result tables.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        id: u8,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Diagnostics for every half-dimension in a range.
    Sweep {
        #[arg(long, value_enum, default_value = "random")]
        family: SweepFamily,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: PathBuf,
    },
    /// Run the bound-check suite.
    Check {
        /// `all`, or a family name whose parameters follow as flags.
        #[arg(long, default_value = "all")]
        scope: String,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        t: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Print every result, not only violations.
        #[arg(long)]
        verbose: bool,
        /// Scale the computed W2 L22 by 1 + REL before the backward-error check.
        #[arg(long, hide = true, value_name = "REL")]
        inject_fault: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Alg {
    W1,
    W2,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Identity,
    Example1,
    Tam,
    TamInverse,
    Pascal,
    DiagT,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepFamily {
    Random,
    Pascal,
    Identity,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct OptionalFamily {
    #[arg(long, value_enum)]
    family: Option<FamilyName>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, LabError> {
    v.ok_or_else(|| LabError::Usage(format!("family {family} needs --{flag}")))
}

fn resolve(
    name: FamilyName,
    theta: Option<f64>,
    n: Option<usize>,
    t: Option<f64>,
    seed: Option<u64>,
) -> Result<MatrixFamily, LabError> {
    Ok(match name {
        FamilyName::Identity => MatrixFamily::Identity {
            n: need(n, "n", "identity")?,
        },
        FamilyName::Example1 => MatrixFamily::Example1,
        FamilyName::Tam => MatrixFamily::Tam {
            theta: need(theta, "theta", "tam")?,
        },
        FamilyName::TamInverse => MatrixFamily::TamInverse {
            theta: need(theta, "theta", "tam-inverse")?,
        },
        FamilyName::Pascal => MatrixFamily::Pascal {
            n: need(n, "n", "pascal")?,
        },
        FamilyName::DiagT => MatrixFamily::DiagT {
            t: need(t, "t", "diag-t")?,
            theta: need(theta, "theta", "diag-t")?,
        },
        FamilyName::Random => MatrixFamily::RandomPdp {
            n: need(n, "n", "random")?,
            seed: seed.unwrap_or(0),
        },
    })
}

fn create(path: &Path) -> Result<File, LabError> {
    File::create(path).map_err(|e| LabError::Io {
        path: path.to_owned(),
        source: e,
    })
}

/// Prints the table, writes the CSV if asked, and reports whether every row completed.
fn emit(rows: &[Diagnosis], csv: Option<&Path>) -> Result<i32, LabError> {
    let plain: Vec<_> = rows.iter().map(|d| d.row.clone()).collect();
    print!("{}", format_table(&plain));
    if let Some(path) = csv {
        write_csv(create(path)?, &plain)?;
    }
    let mut code = exit::SUCCESS;
    for d in rows.iter().filter(|d| !d.is_ok()) {
        let why = d.failure.as_ref().map(ToString::to_string).unwrap_or_default();
        eprintln!("{} {}: {why}", d.row.family, d.row.param);
        code = exit::NUMERICAL;
    }
    Ok(code)
}

fn run(cli: Cli) -> Result<i32, LabError> {
    match cli.command {
        Command::Gen { family, out } => {
            let f = resolve(family.family, family.theta, family.n, family.t, family.seed)?;
            write_matrix(&out, &f.generate()?)?;
            Ok(exit::SUCCESS)
        }
        Command::Factor { alg, input, out } => {
            let p = BlockPartition::from_matrix(&read_matrix(&input)?)?;
            let alg = match alg {
                Alg::W1 => Algorithm::W1,
                Alg::W2 => Algorithm::W2,
            };
            write_matrix(&out, &factorize(&p, alg)?.assemble())?;
            Ok(exit::SUCCESS)
        }
        Command::Diagnose {
            family,
            input,
            csv,
        } => {
            let d = match (input, family.family) {
                (Some(path), _) => {
                    let label = path.display().to_string();
                    diagnose(&read_matrix(&path)?, &label, f64::NAN)
                }
                (None, Some(name)) => {
                    diagnose_family(resolve(name, family.theta, family.n, family.t, family.seed)?)
                }
                (None, None) => {
                    return Err(LabError::Usage("diagnose needs --family or --in".into()))
                }
            };
            emit(&[d], csv.as_deref())
        }
        Command::Table { id, csv } => emit(&run_table(TableId::from_number(id)?), csv.as_deref()),
        Command::Sweep {
            family,
            from,
            to,
            seed,
            csv,
        } => {
            let template = match family {
                SweepFamily::Random => MatrixFamily::RandomPdp { n: 1, seed },
                SweepFamily::Pascal => MatrixFamily::Pascal { n: 1 },
                SweepFamily::Identity => MatrixFamily::Identity { n: 1 },
            };
            let rows = run_sweep(template, from, to, seed)?;
            let plain: Vec<_> = rows.iter().map(|d| d.row.clone()).collect();
            write_csv(create(&csv)?, &plain)?;
            let failed = rows.iter().filter(|d| !d.is_ok()).count();
            println!("{} rows written to {}, {failed} failed", rows.len(), csv.display());
            Ok(if failed == 0 {
                exit::SUCCESS
            } else {
                exit::NUMERICAL
            })
        }
        Command::Check {
            scope,
            theta,
            n,
            t,
            seed,
            verbose,
            inject_fault,
        } => {
            let scope = if scope == "all" {
                CheckScope::All
            } else {
                let name = FamilyName::from_str(&scope, true)
                    .map_err(|_| LabError::Usage(format!("unknown scope {scope:?}")))?;
                CheckScope::Family(resolve(name, theta, n, t, seed)?)
            };
            let report = run_checks_with(scope, CheckOptions { inject_fault });
            print!("{}", report.render(verbose));
            Ok(report.exit_code)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = run(cli).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.exit_code()
    });
    let _ = io::stdout().flush();
    ExitCode::from(code as u8)
}

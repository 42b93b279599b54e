use std::io;

use crate::diagnostics::DiagnosticsRow;
use crate::error::{LabError, Result};

pub const CSV_HEADER: [&str; 15] = [
    "family",
    "param",
    "n",
    "kappa2_A",
    "norm2_A",
    "kappa2_A11",
    "norm2_A11",
    "norm2_invA11",
    "dist_sympl",
    "dist_sympl_rel",
    "relerr_w1",
    "relerr_w2",
    "omega_A",
    "omega_L1",
    "omega_L2",
];

/// Writes the header and one record per row. Reals use the shortest round-trip form.
pub fn write_csv<W: io::Write>(w: W, rows: &[DiagnosticsRow]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER)?;
    for r in rows {
        let mut rec = vec![r.family.clone(), format!("{:?}", r.param), r.n.to_string()];
        rec.extend(r.values().iter().map(|x| format!("{x:?}")));
        out.write_record(&rec)?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_csv<R: io::Read>(r: R) -> Result<Vec<DiagnosticsRow>> {
    let mut input = csv::Reader::from_reader(r);
    let header = input.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(LabError::parse(1, "unexpected CSV header"));
    }
    let mut rows = Vec::new();
    for (i, rec) in input.records().enumerate() {
        let line = i + 2;
        let rec = rec?;
        let real = |k: usize| -> Result<f64> {
            rec[k]
                .parse()
                .map_err(|_| LabError::parse(line, format!("bad value in column {}", CSV_HEADER[k])))
        };
        let n = rec[2]
            .parse()
            .map_err(|_| LabError::parse(line, "bad value in column n"))?;
        let mut v = [0.0; 12];
        for (k, slot) in v.iter_mut().enumerate() {
            *slot = real(k + 3)?;
        }
        rows.push(DiagnosticsRow::from_values(rec[0].to_owned(), real(1)?, n, v));
    }
    Ok(rows)
}

/// `%.4e`-style scientific notation: five significant digits and a signed two-digit exponent.
pub fn format_sci(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{x:.4e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// Paper-style table: one line per quantity, one column per row.
pub fn format_table(rows: &[DiagnosticsRow]) -> String {
    type Field = fn(&DiagnosticsRow) -> f64;
    let lines: [(&str, Field); 12] = [
        ("kappa_2(A)", |r| r.kappa2_a),
        ("||A||_2", |r| r.norm2_a),
        ("kappa_2(A11)", |r| r.kappa2_a11),
        ("||A11||_2", |r| r.norm2_a11),
        ("||A11^-1||_2", |r| r.norm2_inv_a11),
        ("||A11^-1 - S||_2", |r| r.dist_sympl),
        ("||A11^-1 - S||/||A||", |r| r.dist_sympl_rel),
        ("||A - L1 L1^T||/||A||", |r| r.relerr_w1),
        ("||A - L2 L2^T||/||A||", |r| r.relerr_w2),
        ("||A^T J A - J||_2", |r| r.omega_a),
        ("||L1^T J L1 - J||_2", |r| r.omega_l1),
        ("||L2^T J L2 - J||_2", |r| r.omega_l2),
    ];
    let label_width = lines.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let mut out = String::new();
    let head: Vec<String> = rows
        .iter()
        .map(|r| format!("{:>11}", format!("{}={}", param_name(&r.family), r.param)))
        .collect();
    out.push_str(&format!("{:label_width$}  {}\n", "", head.join(" ")));
    for (label, field) in lines {
        let cells: Vec<String> = rows.iter().map(|r| format!("{:>11}", format_sci(field(r)))).collect();
        out.push_str(&format!("{label:label_width$}  {}\n", cells.join(" ")));
    }
    out
}

fn param_name(family: &str) -> &'static str {
    match family {
        "tam" | "tam_inverse" | "diag_t" => "theta",
        "example1" => "-",
        _ => "n",
    }
}

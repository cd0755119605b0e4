use num_bigint::BigUint;

use crate::bench::record::BenchmarkRecord;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportStyle {
    /// Aligned text table.
    Table,
    /// One JSON object per line.
    Structured,
}

const COLUMNS: [&str; 9] = [
    "Instance Code",
    "n",
    "m",
    "p",
    "Number of Potential Solutions",
    "Best Cost",
    "Obtained Solution Approximation Ratio",
    "Number of Kernel Calls",
    "Time (Sec.)",
];

pub fn emit_report(records: &[BenchmarkRecord], style: ReportStyle) -> String {
    match style {
        ReportStyle::Table => emit_table(records),
        ReportStyle::Structured => emit_structured(records),
    }
}

pub fn emit_table(records: &[BenchmarkRecord]) -> String {
    let rows: Vec<[String; 9]> = records.iter().map(table_row).collect();
    let mut widths = COLUMNS.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |cells: &[String], out: &mut String| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        out.push_str(padded.join(" | ").trim_end());
        out.push('\n');
    };
    line(&COLUMNS.map(String::from), &mut out);
    out.push_str(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-"));
    out.push('\n');
    for row in &rows {
        line(row, &mut out);
    }
    out
}

fn table_row(r: &BenchmarkRecord) -> [String; 9] {
    let ratio = match (r.approximation_ratio, r.reference_cost) {
        (Some(_), Some(reference)) if reference == r.best_cost => "Optimal".to_string(),
        (Some(ratio), _) => format!("{ratio:.9}"),
        _ => "-".to_string(),
    };
    [
        r.instance_code.clone(),
        r.n.to_string(),
        r.m.to_string(),
        r.p.to_string(),
        scientific(&r.search_space, 3),
        r.best_cost.to_string(),
        ratio,
        r.kernel_calls.to_string(),
        format!("{:.3}", r.wall_time.as_secs_f64()),
    ]
}

pub fn emit_structured(records: &[BenchmarkRecord]) -> String {
    records.iter().map(|r| serde_json::to_string(r).expect("records serialize") + "\n").collect()
}

pub fn parse_structured(text: &str) -> Result<Vec<BenchmarkRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::Parse { line: i + 1, message: e.to_string() }))
        .collect()
}

/// Scientific notation with `digits` significant digits, e.g. `7.53E+07`.
/// Rounds half up.
pub fn scientific(value: &BigUint, digits: usize) -> String {
    assert!(digits >= 1);
    let s = value.to_string();
    let mut exponent = s.len() - 1;
    let raw: Vec<u8> = s.bytes().map(|b| b - b'0').collect();
    let mut kept: Vec<u8> = raw.iter().copied().chain(std::iter::repeat(0)).take(digits).collect();
    if raw.get(digits).is_some_and(|&d| d >= 5) {
        let mut i = digits;
        loop {
            if i == 0 {
                kept.insert(0, 1);
                kept.truncate(digits);
                exponent += 1;
                break;
            }
            i -= 1;
            if kept[i] == 9 {
                kept[i] = 0;
            } else {
                kept[i] += 1;
                break;
            }
        }
    }
    let mut mantissa = ((kept[0] + b'0') as char).to_string();
    if digits > 1 {
        mantissa.push('.');
        mantissa.extend(kept[1..].iter().map(|d| (d + b'0') as char));
    }
    format!("{mantissa}E+{exponent:02}")
}

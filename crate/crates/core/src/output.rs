//! Fixed-precision CSV and JSON writers for fidelity sweeps.

use std::io::{self, Write};

use serde::Serialize;

use crate::search::ScanRecord;

pub const CSV_HEADER: &str = "F,n_bell,n_pair,avg_bell,avg_mixed";
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Plain decimal with 12 significant digits (never scientific notation).
pub fn format_sig(x: f64) -> String {
    assert!(x.is_finite(), "cannot format {x}");
    if x == 0.0 {
        return format!("{:.*}", SIGNIFICANT_DIGITS - 1, 0.0);
    }
    let exponent = |v: f64| v.abs().log10().floor() as i32;
    let decimals = |e: i32| (SIGNIFICANT_DIGITS as i32 - 1 - e).max(0) as usize;
    let e = exponent(x);
    let s = format!("{:.*}", decimals(e), x);
    // rounding may carry into a new leading digit (0.0999… -> 0.100…)
    let rounded: f64 = s.parse().expect("formatted float parses");
    if rounded != 0.0 && exponent(rounded) > e {
        format!("{:.*}", decimals(e + 1), x)
    } else {
        s
    }
}

/// `x` rounded to what [`format_sig`] prints.
pub fn round_sig(x: f64) -> f64 {
    format_sig(x).parse().expect("formatted float parses")
}

pub fn write_csv<W: Write>(rows: &[ScanRecord], mut w: W) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{}",
            format_sig(r.fidelity),
            format_sig(r.n_bell),
            format_sig(r.n_pair),
            format_sig(r.avg_bell),
            format_sig(r.avg_mixed)
        )?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct ScanMeta {
    pub d: usize,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

#[derive(Serialize)]
struct ScanDocument<'a> {
    meta: &'a ScanMeta,
    rows: Vec<ScanRecord>,
}

/// `{"meta": {d, from, to, steps}, "rows": [...]}` with row values rounded
/// to the CSV precision.
pub fn to_json(meta: &ScanMeta, rows: &[ScanRecord]) -> String {
    let rows = rows
        .iter()
        .map(|r| ScanRecord {
            fidelity: round_sig(r.fidelity),
            n_bell: round_sig(r.n_bell),
            n_pair: round_sig(r.n_pair),
            avg_bell: round_sig(r.avg_bell),
            avg_mixed: round_sig(r.avg_mixed),
        })
        .collect();
    let doc = ScanDocument { meta, rows };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

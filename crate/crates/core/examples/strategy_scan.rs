//! Sweep of the two strategies for d = 3 written as CSV, with the winner
//! marked on each row.
//!
//! cargo run --example strategy_scan > scan.csv

use std::io;

use rpe_lab::output::write_csv;
use rpe_lab::search::{scan, Advantage};

fn main() -> rpe_lab::Result<()> {
    let rows = scan(3, 0.5, 0.62, 121)?;
    write_csv(&rows, io::stdout().lock()).expect("stdout");

    let mixed: Vec<f64> = rows
        .iter()
        .filter(|r| r.advantage() == Advantage::Mixed)
        .map(|r| r.fidelity)
        .collect();
    if let (Some(first), Some(last)) = (mixed.first(), mixed.last()) {
        eprintln!("mixed measurement ahead on {} of {} points, F in [{first:.3}, {last:.3}]", mixed.len(), rows.len());
    }
    Ok(())
}

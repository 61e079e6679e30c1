//! Fidelity window where measuring pair and Fourier states yields more
//! average negativity than the Bell measurement.
//!
//! cargo run --example better_than_bell

use rpe_lab::analytic::{advantage_interval, exact_forms, threshold_fidelity};
use rpe_lab::search::{find_crossing, find_pair_onset};

fn main() -> rpe_lab::Result<()> {
    let (_, lo, hi) = exact_forms(3);
    let left = find_crossing(3, 0.50, 0.56, 1e-12)?;
    let right = find_crossing(3, 0.56, 0.60, 1e-12)?;
    println!("d = 3");
    println!("  lower end  {left:.12}  exact {lo} = {:.12}", lo.value());
    println!("  upper end  {right:.12}  exact {hi} = {:.12}", hi.value());
    println!("  pair onset {:.12}", find_pair_onset(3, 0.50, 0.56, 1e-12)?);

    println!();
    println!("{:>3}  {:>12}  {:>12}  {:>12}  {:>10}", "d", "lo", "hi", "threshold", "width");
    for d in 2..=10 {
        let (lo, hi) = advantage_interval(d);
        // for d = 2 the two measurements give identical averages
        let width = if d == 2 { 0.0 } else { hi - lo };
        println!(
            "{d:>3}  {lo:>12.8}  {hi:>12.8}  {:>12.8}  {width:>10.6}",
            threshold_fidelity(d)
        );
    }
    Ok(())
}

//! Fidelity above which the generalized Bell measurement is optimal, with
//! its exact radical form, and a check of the defining inequality on a grid.
//!
//! cargo run --example bell_threshold

use rpe_lab::analytic::{condition_final, exact_forms, threshold_fidelity};
use rpe_lab::IsoParams;

fn main() -> rpe_lab::Result<()> {
    println!("{:>4}  {:>14}  exact", "d", "threshold");
    for d in 2..=10 {
        let (exact, _, _) = exact_forms(d);
        println!("{d:>4}  {:>14.10}  {exact}", threshold_fidelity(d));
    }

    let mut disagreements = 0;
    for d in 2..=10 {
        let t = threshold_fidelity(d);
        for i in 0..=1000 {
            let f = i as f64 / 1000.0;
            if condition_final(&IsoParams::new(d, f)?) != (f >= t) {
                disagreements += 1;
            }
        }
    }
    println!("grid disagreements: {disagreements}");

    for d in [100, 1000, 10_000] {
        println!("threshold({d}) = {:.6}", threshold_fidelity(d));
    }
    Ok(())
}

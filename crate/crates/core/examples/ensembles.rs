//! The two named measurements: completeness, Schmidt spectra of the members
//! and average outcome negativity against the brute-force average.
//!
//! cargo run --example ensembles

use rpe_lab::analytic::{average_negativity, ensemble_averages};
use rpe_lab::oracle::{build_joint, measure_outcome, negativity_numeric};
use rpe_lab::states::{bell_measurement, mixed_measurement, schmidt_spectrum};
use rpe_lab::IsoParams;

fn main() -> rpe_lab::Result<()> {
    let d = 3;
    let p = IsoParams::new(d, 0.56)?;
    let joint = build_joint(&p)?;
    for (name, ens) in [("bell", bell_measurement(d)), ("mixed", mixed_measurement(d))] {
        ens.check_completeness()?;
        println!("{name}: {} members, completeness residual {:.1e}", ens.len(), ens.completeness_residual());
        let mut oracle_avg = 0.0;
        for (i, v) in ens.vectors().iter().enumerate() {
            let lam = schmidt_spectrum(v, d)?;
            let (prob, rho) = measure_outcome(&joint, v, d)?;
            let n = negativity_numeric(&rho, d)?;
            oracle_avg += prob * n;
            println!("  #{i:<2} rank {}  p = {prob:.6}  N = {n:.10}", lam.rank());
        }
        println!("  average closed {:.12}", average_negativity(&p, &ens)?);
        println!("  average oracle {oracle_avg:.12}");
    }
    let (bell, mixed) = ensemble_averages(&p);
    println!("closed-form averages: bell {bell:.12}, mixed {mixed:.12}");
    Ok(())
}

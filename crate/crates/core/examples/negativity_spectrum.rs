//! Outcome negativity and partial-transpose spectrum for one Schmidt
//! spectrum, computed in closed form and by brute force.
//!
//! cargo run --example negativity_spectrum

use rpe_lab::analytic::{negativity_closed, negativity_upper_bound, pt_spectrum_closed};
use rpe_lab::oracle::{build_joint, measure_outcome, negativity_numeric, pt_spectrum_numeric};
use rpe_lab::states::schmidt_state;
use rpe_lab::{IsoParams, SchmidtVector};

fn main() -> rpe_lab::Result<()> {
    let d = 3;
    let p = IsoParams::new(d, 0.7)?;
    let lam = SchmidtVector::new(vec![0.5, 0.3, 0.2])?;
    println!("d = {d}, F = {}, a = {:.6}, b = {:.6}", p.fidelity(), p.a(), p.b());
    println!("lambda = {:?}", lam.lambdas());

    let spec = pt_spectrum_closed(&p, &lam)?;
    for (k, e) in spec.diag_eigs.iter().enumerate() {
        println!("  |{k}{k}>          {e:+.10}");
    }
    for e in &spec.pair_eigs {
        println!("  ({},{}) plus    {:+.10}", e.k, e.l, e.plus);
        println!("  ({},{}) minus   {:+.10}", e.k, e.l, e.minus);
    }

    let joint = build_joint(&p)?;
    let (prob, rho) = measure_outcome(&joint, &schmidt_state(&lam, d)?, d)?;
    let numeric = pt_spectrum_numeric(&rho, d)?;
    let closed = spec.sorted_values();
    let worst = numeric
        .iter()
        .zip(&closed)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);

    println!("probability        {prob:.12} (1/d² = {:.12})", 1.0 / 9.0);
    println!("negativity closed  {:.12}", negativity_closed(&p, &lam)?);
    println!("negativity oracle  {:.12}", negativity_numeric(&rho, d)?);
    println!("upper bound        {:.12}", negativity_upper_bound(&p, &lam)?);
    println!("max spectrum diff  {worst:.2e}");
    Ok(())
}

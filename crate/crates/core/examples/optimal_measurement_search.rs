//! Numerical maximization of the outcome negativity over Schmidt spectra,
//! below and above the Bell threshold.
//!
//! cargo run --release --example optimal_measurement_search

use rpe_lab::analytic::{negativity_bell, negativity_pair, threshold_fidelity};
use rpe_lab::search::{default_grid_step, maximize_outcome, DEFAULT_REFINE_ITERS};
use rpe_lab::IsoParams;

fn main() -> rpe_lab::Result<()> {
    for d in [3, 4, 5] {
        let t = threshold_fidelity(d);
        println!("d = {d}, threshold = {t:.6}");
        for f in [t - 0.02, t - 0.005, t + 0.005, 0.9] {
            let p = IsoParams::new(d, f)?;
            let r = maximize_outcome(&p, default_grid_step(d), DEFAULT_REFINE_ITERS)?;
            let lam: Vec<String> = r.best_lambda.lambdas().iter().map(|x| format!("{x:.4}")).collect();
            println!(
                "  F = {f:.4}  best = {:.8}  bell = {:.8}  pair = {:.8}  rank {}  [{}]  ({} evals)",
                r.best_value,
                negativity_bell(&p),
                negativity_pair(&p),
                r.best_lambda.rank(),
                lam.join(", "),
                r.evaluations
            );
        }
    }
    Ok(())
}

//! Seeded self-checks that pit the closed forms against the brute-force
//! oracle and against each other. Driven by `rpe verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic::{
    self, condition_dim, condition_final, condition_rank, negativity_bell, negativity_uniform_rank,
    negativity_upper_bound, pt_spectrum_closed,
};
use crate::error::Result;
use crate::oracle::{self, MAX_ORACLE_DIM};
use crate::states::{bell_measurement, mixed_measurement, schmidt_state, IsoParams, SchmidtVector};

/// Closed form vs oracle, absolute.
pub const ORACLE_TOL: f64 = 1e-10;
/// Slack on the inequality chain.
pub const CHAIN_TOL: f64 = 1e-12;
/// Born probability tolerance.
pub const PROBABILITY_TOL: f64 = 1e-12;

/// Outcome-negativity function under test.
pub type OutcomeNegativity = fn(&IsoParams, &SchmidtVector) -> Result<f64>;

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub d_max: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            d_max: 4,
            samples: 100,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            passed: 0,
            failed: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    fn record<T>(&mut self, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || e.to_string());
                None
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Random spectrum: rank uniform in `1..=d`, exponential weights.
pub fn random_schmidt<R: Rng>(rng: &mut R, d: usize) -> SchmidtVector {
    let rank = rng.gen_range(1..=d);
    let mut w: Vec<f64> = (0..rank).map(|_| -(1.0 - rng.gen::<f64>()).ln() + 1e-9).collect();
    w.resize(d, 0.0);
    SchmidtVector::normalized(w).expect("positive weights")
}

pub fn random_params<R: Rng>(rng: &mut R, d: usize) -> IsoParams {
    IsoParams::new(d, rng.gen::<f64>()).expect("F in [0, 1)")
}

/// Outcome negativity without the `max{0, ·}` clip; a deliberately broken
/// implementation used as a negative control.
pub fn negativity_unclipped(p: &IsoParams, lam: &SchmidtVector) -> Result<f64> {
    let (a, b, df) = (p.a(), p.b(), p.d() as f64);
    let s = lam.support();
    let mut sum = 0.0;
    for k in 0..s.len() {
        for l in (k + 1)..s.len() {
            sum += b * b * (s[k] * s[l]).sqrt() - df * df * a * a - df * a * b * (s[k] + s[l]);
        }
    }
    Ok(2.0 * sum / (df - 1.0))
}

/// Runs every suite with the reference closed form.
pub fn run_all(cfg: &VerifyConfig) -> Vec<SuiteResult> {
    run_all_with(cfg, analytic::negativity_closed)
}

pub fn run_all_with(cfg: &VerifyConfig, outcome: OutcomeNegativity) -> Vec<SuiteResult> {
    vec![
        oracle_equivalence(cfg, outcome),
        chain_properties(cfg, outcome),
        completeness(cfg),
        probabilities(cfg),
        average_agreement(cfg, outcome),
    ]
}

fn oracle_dims(cfg: &VerifyConfig) -> std::ops::RangeInclusive<usize> {
    2..=cfg.d_max.min(MAX_ORACLE_DIM)
}

/// `outcome` and the closed PT spectrum against the numeric route.
pub fn oracle_equivalence(cfg: &VerifyConfig, outcome: OutcomeNegativity) -> SuiteResult {
    let mut suite = SuiteResult::new("oracle-equivalence");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for d in oracle_dims(cfg) {
        for _ in 0..cfg.samples {
            let p = random_params(&mut rng, d);
            let lam = random_schmidt(&mut rng, d);
            let Some(joint) = suite.record(oracle::build_joint(&p)) else { continue };
            let Some(psi) = suite.record(schmidt_state(&lam, d)) else { continue };
            let Some((_, rho)) = suite.record(oracle::measure_outcome(&joint, &psi, d)) else {
                continue;
            };
            let Some(numeric) = suite.record(oracle::negativity_numeric(&rho, d)) else { continue };
            let Some(closed) = suite.record(outcome(&p, &lam)) else { continue };
            suite.check((numeric - closed).abs() <= ORACLE_TOL, || {
                format!("d={d} F={} λ={:?}: oracle {numeric} vs closed {closed}", p.fidelity(), lam.lambdas())
            });

            let Some(spectrum) = suite.record(oracle::pt_spectrum_numeric(&rho, d)) else { continue };
            let Some(closed) = suite.record(pt_spectrum_closed(&p, &lam)) else { continue };
            let worst = spectrum
                .iter()
                .zip(closed.sorted_values())
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max);
            suite.check(worst <= ORACLE_TOL, || {
                format!("d={d} F={}: PT spectra differ by {worst:e}", p.fidelity())
            });
        }
    }
    suite
}

/// Bound, chain and range properties of `outcome`.
pub fn chain_properties(cfg: &VerifyConfig, outcome: OutcomeNegativity) -> SuiteResult {
    let mut suite = SuiteResult::new("chain-property");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
    for d in 2..=cfg.d_max {
        for _ in 0..cfg.samples {
            let p = random_params(&mut rng, d);
            let lam = random_schmidt(&mut rng, d);
            let Some(n) = suite.record(outcome(&p, &lam)) else { continue };
            let Some(bound) = suite.record(negativity_upper_bound(&p, &lam)) else { continue };
            let ctx = || format!("d={d} F={} λ={:?}", p.fidelity(), lam.lambdas());
            suite.check((0.0..=1.0 + CHAIN_TOL).contains(&n), || format!("{}: N = {n} outside [0,1]", ctx()));
            suite.check(n <= bound + CHAIN_TOL, || format!("{}: N = {n} > bound {bound}", ctx()));

            let r = lam.rank();
            let Some(uniform_r) = suite.record(negativity_uniform_rank(&p, r)) else { continue };
            let bell = negativity_bell(&p);
            if condition_rank(&p, r) {
                suite.check(n <= uniform_r + CHAIN_TOL, || format!("{}: N = {n} > N(φ_R) = {uniform_r}", ctx()));
            }
            if condition_dim(&p, r) {
                suite.check(uniform_r <= bell + CHAIN_TOL, || {
                    format!("{}: N(φ_R) = {uniform_r} > N(φ_d) = {bell}", ctx())
                });
            }
            if condition_final(&p) {
                suite.check(n <= bell + CHAIN_TOL, || format!("{}: N = {n} > N(φ_d) = {bell}", ctx()));
            }
        }
    }
    suite
}

/// Both named measurements resolve the identity.
pub fn completeness(cfg: &VerifyConfig) -> SuiteResult {
    let mut suite = SuiteResult::new("completeness");
    for d in 2..=cfg.d_max {
        for (name, ens) in [("bell", bell_measurement(d)), ("mixed", mixed_measurement(d))] {
            let r = ens.completeness_residual();
            suite.check(ens.len() == d * d && ens.check_completeness().is_ok(), || {
                format!("{name} d={d}: {} members, residual {r:e}", ens.len())
            });
        }
    }
    suite
}

/// Every rank-one outcome on the joint state occurs with probability `1/d²`.
pub fn probabilities(cfg: &VerifyConfig) -> SuiteResult {
    let mut suite = SuiteResult::new("probability");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(2));
    for d in oracle_dims(cfg) {
        let expected = 1.0 / (d * d) as f64;
        let p = random_params(&mut rng, d);
        let Some(joint) = suite.record(oracle::build_joint(&p)) else { continue };
        for (name, ens) in [("bell", bell_measurement(d)), ("mixed", mixed_measurement(d))] {
            let mut total = 0.0;
            for v in ens.vectors() {
                let Some((prob, _)) = suite.record(oracle::measure_outcome(&joint, v, d)) else { continue };
                total += prob;
                suite.check((prob - expected).abs() <= PROBABILITY_TOL, || {
                    format!("{name} d={d}: outcome probability {prob}")
                });
            }
            suite.check((total - 1.0).abs() <= PROBABILITY_TOL, || {
                format!("{name} d={d}: probabilities sum to {total}")
            });
        }
        for _ in 0..cfg.samples {
            let lam = random_schmidt(&mut rng, d);
            let Some(psi) = suite.record(schmidt_state(&lam, d)) else { continue };
            let Some((prob, _)) = suite.record(oracle::measure_outcome(&joint, &psi, d)) else { continue };
            suite.check((prob - expected).abs() <= PROBABILITY_TOL, || {
                format!("d={d} λ={:?}: probability {prob}", lam.lambdas())
            });
        }
    }
    suite
}

/// Oracle `Σ p_j N_j` against the analytic ensemble averages, `d ∈ {2, 3}`.
pub fn average_agreement(cfg: &VerifyConfig, outcome: OutcomeNegativity) -> SuiteResult {
    let mut suite = SuiteResult::new("average-agreement");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(3));
    let rounds = (cfg.samples / 10).max(1);
    for d in 2..=cfg.d_max.min(3) {
        for _ in 0..rounds {
            let p = random_params(&mut rng, d);
            let Some(joint) = suite.record(oracle::build_joint(&p)) else { continue };
            for (name, ens) in [("bell", bell_measurement(d)), ("mixed", mixed_measurement(d))] {
                let mut numeric = 0.0;
                for v in ens.vectors() {
                    let Some((prob, rho)) = suite.record(oracle::measure_outcome(&joint, v, d)) else {
                        continue;
                    };
                    let Some(n) = suite.record(oracle::negativity_numeric(&rho, d)) else { continue };
                    numeric += prob * n;
                }
                let Some(closed) = suite.record(analytic::average_negativity_with(&p, &ens, outcome)) else {
                    continue;
                };
                suite.check((numeric - closed).abs() <= ORACLE_TOL, || {
                    format!("{name} d={d} F={}: oracle {numeric} vs closed {closed}", p.fidelity())
                });
            }
        }
    }
    suite
}

//! Numerical probes of the optimality results: single-outcome maximization
//! over Schmidt spectra, strategy-crossing fidelities and fidelity sweeps.

use serde::Serialize;

use crate::analytic::{ensemble_averages, negativity_bell, negativity_closed, negativity_pair};
use crate::error::{Error, Result};
use crate::states::{IsoParams, SchmidtVector};

/// Largest `d` for which the exhaustive simplex grid is attempted.
pub const MAX_SEARCH_DIM: usize = 6;
/// Simplex diameter below which refinement counts as converged.
pub const REFINE_DIAMETER_TOL: f64 = 1e-9;
/// Default refinement budget.
pub const DEFAULT_REFINE_ITERS: usize = 200;
/// Two averages closer than this are a tie.
pub const TIE_TOL: f64 = 1e-12;

/// Grid spacing used when none is given: `0.02` up to `d = 4`, else `0.05`.
pub fn default_grid_step(d: usize) -> f64 {
    if d <= 4 {
        0.02
    } else {
        0.05
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub best_lambda: SchmidtVector,
    /// Equals `negativity_closed(p, best_lambda)`.
    pub best_value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Maximizes the outcome negativity over descending Schmidt spectra.
///
/// Restricting to sorted spectra loses nothing: any rank-one outcome is
/// locally equivalent to `Σ √λ_j |jj⟩` with sorted `λ`. Since every outcome
/// occurs with probability `1/d²`, the maximum also bounds the average of any
/// complete rank-one measurement.
///
/// The search evaluates every sorted grid point with spacing
/// `1/round(1/grid_step)`, plus uniform spectra of each rank, then polishes
/// the best point with Nelder–Mead on the first `d-1` coordinates.
pub fn maximize_outcome(p: &IsoParams, grid_step: f64, refine_iters: usize) -> Result<SearchReport> {
    let d = p.d();
    if !(grid_step > 0.0 && grid_step <= 0.5) {
        return Err(Error::InvalidArgument(format!("grid step {grid_step} not in (0, 0.5]")));
    }
    if d > MAX_SEARCH_DIM {
        return Err(Error::InvalidArgument(format!(
            "exhaustive grid limited to d <= {MAX_SEARCH_DIM}, got {d}"
        )));
    }

    let mut evaluations = 0usize;
    let mut eval = |lam: &SchmidtVector| -> f64 {
        evaluations += 1;
        negativity_closed(p, lam).expect("rank <= d by construction")
    };

    let mut best = SchmidtVector::uniform(d, d)?;
    let mut best_value = eval(&best);
    for r in 1..d {
        let lam = SchmidtVector::uniform(r, d)?;
        let v = eval(&lam);
        if v > best_value {
            best = lam;
            best_value = v;
        }
    }

    let units = ((1.0 / grid_step).round() as usize).max(2);
    for parts in descending_compositions(units, d) {
        let lam = SchmidtVector::normalized(parts.iter().map(|&k| k as f64).collect())?;
        let v = eval(&lam);
        if v > best_value {
            best = lam;
            best_value = v;
        }
    }

    let start: Vec<f64> = best.lambdas()[..d - 1].to_vec();
    let objective = |x: &[f64]| -> f64 { -negativity_closed(p, &project(x)).expect("rank <= d") };
    let polished = nelder_mead(objective, &start, grid_step / 2.0, refine_iters);
    evaluations += polished.evaluations;
    let candidate = project(&polished.point);
    let candidate_value = negativity_closed(p, &candidate)?;
    if candidate_value > best_value {
        best = candidate;
    }

    Ok(SearchReport {
        best_value: negativity_closed(p, &best)?,
        best_lambda: best,
        evaluations,
        converged: polished.converged,
    })
}

/// Maps free coordinates `(λ_0, …, λ_{d-2})` onto the simplex: negative
/// entries are clipped, the last weight is `1 - Σ`, and the result is
/// renormalized and sorted.
fn project(x: &[f64]) -> SchmidtVector {
    let mut w: Vec<f64> = x.iter().map(|v| v.max(0.0)).collect();
    let head: f64 = w.iter().sum();
    w.push((1.0 - head).max(0.0));
    SchmidtVector::normalized(w.clone())
        .or_else(|_| SchmidtVector::uniform(w.len(), w.len()))
        .expect("uniform fallback is valid")
}

/// All `(k_0 ≥ k_1 ≥ … ≥ k_{d-1} ≥ 0)` with `Σ k_i = total`.
fn descending_compositions(total: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, cap: usize, slots: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(acc.clone());
            }
            return;
        }
        // the remaining slots can hold at most cap each
        if remaining > cap * slots {
            return;
        }
        let hi = remaining.min(cap);
        for k in (0..=hi).rev() {
            acc.push(k);
            rec(remaining - k, k, slots - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, d, &mut Vec::with_capacity(d), &mut out);
    out
}

struct Polished {
    point: Vec<f64>,
    evaluations: usize,
    converged: bool,
}

fn nelder_mead<F: Fn(&[f64]) -> f64>(f: F, start: &[f64], step: f64, max_iters: usize) -> Polished {
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let n = start.len();
    let mut evaluations = 0usize;
    let mut eval = |x: &[f64]| {
        evaluations += 1;
        f(x)
    };

    let mut simplex: Vec<Vec<f64>> = vec![start.to_vec()];
    for i in 0..n {
        let mut v = start.to_vec();
        v[i] += step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| eval(v)).collect();

    let mut converged = false;
    for _ in 0..max_iters {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let diameter = simplex[1..]
            .iter()
            .map(|v| dist(v, &simplex[0]))
            .fold(0.0, f64::max);
        if diameter < REFINE_DIAMETER_TOL {
            converged = true;
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex[..n].iter().map(|v| v[k]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = along(REFLECT);
        let fr = eval(&reflected);
        if fr < values[0] {
            let expanded = along(EXPAND);
            let fe = eval(&expanded);
            if fe < fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
        } else if fr < values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
        } else {
            let (contracted, fc) = if fr < values[n] {
                let c = along(CONTRACT);
                let fc = eval(&c);
                (c, fc)
            } else {
                let c = along(-CONTRACT);
                let fc = eval(&c);
                (c, fc)
            };
            if fc < values[n].min(fr) {
                simplex[n] = contracted;
                values[n] = fc;
            } else {
                let best = simplex[0].clone();
                for i in 1..=n {
                    for k in 0..n {
                        simplex[i][k] = best[k] + SHRINK * (simplex[i][k] - best[k]);
                    }
                    values[i] = eval(&simplex[i]);
                }
            }
        }
    }

    let best = (0..=n)
        .min_by(|&i, &j| values[i].total_cmp(&values[j]))
        .expect("nonempty simplex");
    Polished {
        point: simplex[best].clone(),
        evaluations,
        converged,
    }
}

fn dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

/// Locates the boundary of `{x : f(x) > 0}` inside `[left, right]` by
/// bisection. Exactly one endpoint must satisfy `f > 0`; zero counts as
/// nonpositive, so clipped functions that sit at `0` on one side work.
pub fn bisect_boundary<G: Fn(f64) -> f64>(g: G, left: f64, right: f64, tol: f64) -> Result<f64> {
    if !left.is_finite() || !right.is_finite() || left >= right {
        return Err(Error::InvalidArgument(format!("empty bracket [{left}, {right}]")));
    }
    if tol.is_nan() || tol < 1e-12 {
        return Err(Error::InvalidArgument(format!("tolerance {tol} below 1e-12")));
    }
    let left_positive = g(left) > 0.0;
    if left_positive == (g(right) > 0.0) {
        return Err(Error::BracketInvalid { left, right });
    }
    let (mut lo, mut hi) = (left, right);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (g(mid) > 0.0) == left_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn check_d(d: usize) -> Result<()> {
    if d < 2 {
        Err(Error::DimensionTooSmall(d))
    } else {
        Ok(())
    }
}

fn iso(d: usize, f: f64) -> IsoParams {
    IsoParams::new(d, f.clamp(0.0, 1.0)).expect("d >= 2 checked")
}

/// Fidelity where the pair-state outcome negativity crosses the Bell one,
/// i.e. a boundary of `{F : N_pair(F) > N_bell(F)}`.
///
/// That set is the open advantage interval, so a bracket around its lower
/// end (where both sides are still zero below it) returns the onset of pair
/// entanglement, and one around its upper end returns the overtaking point.
pub fn find_crossing(d: usize, left: f64, right: f64, tol: f64) -> Result<f64> {
    check_d(d)?;
    check_unit_bracket(left, right)?;
    bisect_boundary(
        |f| {
            let p = iso(d, f);
            negativity_pair(&p) - negativity_bell(&p)
        },
        left,
        right,
        tol,
    )
}

/// Fidelity at which pair-state outcomes become entangled.
pub fn find_pair_onset(d: usize, left: f64, right: f64, tol: f64) -> Result<f64> {
    check_d(d)?;
    check_unit_bracket(left, right)?;
    bisect_boundary(|f| negativity_pair(&iso(d, f)), left, right, tol)
}

/// Fidelity at which Bell outcomes become entangled.
pub fn find_bell_onset(d: usize, left: f64, right: f64, tol: f64) -> Result<f64> {
    check_d(d)?;
    check_unit_bracket(left, right)?;
    bisect_boundary(|f| negativity_bell(&iso(d, f)), left, right, tol)
}

fn check_unit_bracket(left: f64, right: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&left) || !(0.0..=1.0).contains(&right) {
        return Err(Error::InvalidArgument(format!(
            "bracket [{left}, {right}] outside [0, 1]"
        )));
    }
    Ok(())
}

/// One fidelity sample of the strategy comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRecord {
    #[serde(rename = "F")]
    pub fidelity: f64,
    pub n_bell: f64,
    pub n_pair: f64,
    pub avg_bell: f64,
    pub avg_mixed: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Advantage {
    Mixed,
    Bell,
    Tie,
}

impl ScanRecord {
    pub fn at(p: &IsoParams) -> Self {
        let (avg_bell, avg_mixed) = ensemble_averages(p);
        Self {
            fidelity: p.fidelity(),
            n_bell: negativity_bell(p),
            n_pair: negativity_pair(p),
            avg_bell,
            avg_mixed,
        }
    }

    /// Which measurement wins on average; differences within `1e-12` tie.
    pub fn advantage(&self) -> Advantage {
        let diff = self.avg_mixed - self.avg_bell;
        if diff > TIE_TOL {
            Advantage::Mixed
        } else if diff < -TIE_TOL {
            Advantage::Bell
        } else {
            Advantage::Tie
        }
    }
}

/// Uniform fidelity grid `f_lo..=f_hi` with `steps` points.
pub fn fidelity_grid(f_lo: f64, f_hi: f64, steps: usize) -> Result<Vec<f64>> {
    if !(0.0 <= f_lo && f_lo < f_hi && f_hi <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= from < to <= 1, got [{f_lo}, {f_hi}]"
        )));
    }
    if steps < 2 {
        return Err(Error::InvalidArgument(format!("steps must be >= 2, got {steps}")));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i == steps - 1 {
                f_hi
            } else {
                f_lo + (f_hi - f_lo) * i as f64 / last
            }
        })
        .collect())
}

/// Closed-form strategy comparison on a fidelity grid, ascending in `F`.
pub fn scan(d: usize, f_lo: f64, f_hi: f64, steps: usize) -> Result<Vec<ScanRecord>> {
    check_d(d)?;
    fidelity_grid(f_lo, f_hi, steps)?
        .into_iter()
        .map(|f| Ok(ScanRecord::at(&IsoParams::new(d, f)?)))
        .collect()
}

//! Closed forms for a single rank-one outcome on two identical isotropic
//! links, and the fidelity thresholds derived from them.
//!
//! Measuring systems 1 and 3 of `ρ_F ⊗ ρ_F` with `Σ_j √λ_j |jj⟩` leaves,
//! with probability exactly `1/d²`,
//!
//! ```text
//! ρ_ψ = d²a² I⊗I + b² Σ_ij √(λ_i λ_j) |ii⟩⟨jj| + dab (Λ⊗I + I⊗Λ)
//! ```
//!
//! on systems 2 and 4. Its partial transpose is diagonal in the basis
//! `{|kk⟩, (|kl⟩ ± |lk⟩)/√2}`, which yields every expression below.

use crate::error::{Error, Result};
use crate::states::{self, IsoParams, MeasurementEnsemble, SchmidtVector};
use crate::tensor::ComplexMatrix;
use num_complex::Complex64;

/// Eigenvalues of the partial transpose of one outcome state.
#[derive(Debug, Clone, PartialEq)]
pub struct PtSpectrum {
    /// Eigenvalue on `|kk⟩`, for `k = 0..d`.
    pub diag_eigs: Vec<f64>,
    pub pair_eigs: Vec<PairEigenvalues>,
}

/// Eigenvalues on `(|kl⟩ ± |lk⟩)/√2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairEigenvalues {
    pub k: usize,
    pub l: usize,
    pub plus: f64,
    pub minus: f64,
}

impl PtSpectrum {
    /// All `d²` eigenvalues, ascending.
    pub fn sorted_values(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .diag_eigs
            .iter()
            .copied()
            .chain(self.pair_eigs.iter().flat_map(|p| [p.plus, p.minus]))
            .collect();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn trace(&self) -> f64 {
        self.sorted_values().iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.sorted_values()[0]
    }
}

/// `λ_k`, zero past the stored length.
fn lambda(lam: &SchmidtVector, k: usize) -> f64 {
    lam.lambdas().get(k).copied().unwrap_or(0.0)
}

/// The outcome state `ρ_ψ` on systems 2 and 4, built directly from its
/// closed form.
pub fn post_state_closed(p: &IsoParams, lam: &SchmidtVector) -> Result<ComplexMatrix> {
    let d = p.d();
    lam.check_dim(d)?;
    let (a, b, df) = (p.a(), p.b(), p.df());
    let n = d * d;
    let mut m = ComplexMatrix::identity(n).scale(df * df * a * a);
    let support = lam.support();
    for (i, &li) in support.iter().enumerate() {
        for (j, &lj) in support.iter().enumerate() {
            m[(i * d + i, j * d + j)] += Complex64::new(b * b * (li * lj).sqrt(), 0.0);
        }
    }
    // dab (Λ ⊗ I + I ⊗ Λ)
    for k in 0..d {
        for l in 0..d {
            let w = df * a * b * (lambda(lam, k) + lambda(lam, l));
            m[(k * d + l, k * d + l)] += Complex64::new(w, 0.0);
        }
    }
    Ok(m)
}

pub fn pt_spectrum_closed(p: &IsoParams, lam: &SchmidtVector) -> Result<PtSpectrum> {
    let d = p.d();
    lam.check_dim(d)?;
    let (a, b, df) = (p.a(), p.b(), p.df());
    let base = df * df * a * a;
    let diag_eigs = (0..d)
        .map(|k| base + (b * b + 2.0 * df * a * b) * lambda(lam, k))
        .collect();
    let mut pair_eigs = Vec::with_capacity(d * (d - 1) / 2);
    for k in 0..d {
        for l in (k + 1)..d {
            let (lk, ll) = (lambda(lam, k), lambda(lam, l));
            let centre = base + df * a * b * (lk + ll);
            let off = b * b * (lk * ll).sqrt();
            pair_eigs.push(PairEigenvalues {
                k,
                l,
                plus: centre + off,
                minus: centre - off,
            });
        }
    }
    Ok(PtSpectrum {
        diag_eigs,
        pair_eigs,
    })
}

/// Negativity of the outcome state:
/// `2/(d-1) Σ_{k<l<R} max{0, b²√(λ_kλ_l) - d²a² - dab(λ_k+λ_l)}`.
pub fn negativity_closed(p: &IsoParams, lam: &SchmidtVector) -> Result<f64> {
    lam.check_dim(p.d())?;
    let (a, b, df) = (p.a(), p.b(), p.df());
    let s = lam.support();
    let mut sum = 0.0;
    for k in 0..s.len() {
        for l in (k + 1)..s.len() {
            let term = b * b * (s[k] * s[l]).sqrt() - df * df * a * a - df * a * b * (s[k] + s[l]);
            sum += term.max(0.0);
        }
    }
    Ok(2.0 * sum / (df - 1.0))
}

/// AM–GM relaxation `2/(d-1) Σ_{k<l<R} max{0, (b²-2dab)√(λ_kλ_l) - d²a²}`.
pub fn negativity_upper_bound(p: &IsoParams, lam: &SchmidtVector) -> Result<f64> {
    lam.check_dim(p.d())?;
    let (a, b, df) = (p.a(), p.b(), p.df());
    let s = lam.support();
    let mut sum = 0.0;
    for k in 0..s.len() {
        for l in (k + 1)..s.len() {
            let term = (b * b - 2.0 * df * a * b) * (s[k] * s[l]).sqrt() - df * df * a * a;
            sum += term.max(0.0);
        }
    }
    Ok(2.0 * sum / (df - 1.0))
}

/// Negativity of the outcome for `λ` uniform on `rank` entries. Exact, since
/// AM–GM is tight for equal weights.
pub fn negativity_uniform_rank(p: &IsoParams, rank: usize) -> Result<f64> {
    let d = p.d();
    if rank == 0 || rank > d {
        return Err(Error::RankExceedsDimension { rank, d });
    }
    let (a, b, df) = (p.a(), p.b(), p.df());
    let r = rank as f64;
    let inner = b * b - 2.0 * df * a * b - r * df * df * a * a;
    Ok((r - 1.0) / (df - 1.0) * inner.max(0.0))
}

/// Outcome negativity of every generalized Bell projector,
/// `max{0, b² - 2dab - d³a²}`.
pub fn negativity_bell(p: &IsoParams) -> f64 {
    let (a, b, df) = (p.a(), p.b(), p.df());
    (b * b - 2.0 * df * a * b - df * df * df * a * a).max(0.0)
}

/// Outcome negativity of a pair state `ψ_kl^±`, i.e. `λ = (1/2, 1/2, 0, …)`.
pub fn negativity_pair(p: &IsoParams) -> f64 {
    let lam = SchmidtVector::uniform(2, p.d()).expect("d >= 2");
    negativity_closed(p, &lam).expect("rank 2 <= d")
}

fn chain_lhs(p: &IsoParams) -> f64 {
    let (a, b, df) = (p.a(), p.b(), p.df());
    b * b - 2.0 * df * a * b
}

fn d2a2(p: &IsoParams) -> f64 {
    let (a, df) = (p.a(), p.df());
    df * df * a * a
}

/// `b² - 2dab ≥ 2(R-1) d²a²`: outcome of rank `R` is dominated by the
/// uniform rank-`R` outcome.
pub fn condition_rank(p: &IsoParams, rank: usize) -> bool {
    chain_lhs(p) >= 2.0 * (rank as f64 - 1.0) * d2a2(p)
}

/// `b² - 2dab ≥ (R+d-1) d²a²`: the uniform rank-`R` outcome is dominated by
/// the Bell outcome.
pub fn condition_dim(p: &IsoParams, rank: usize) -> bool {
    chain_lhs(p) >= (rank as f64 + p.df() - 1.0) * d2a2(p)
}

/// `b² - 2dab ≥ 2(d-1) d²a²`: the Bell measurement is optimal among
/// rank-one measurements.
pub fn condition_final(p: &IsoParams) -> bool {
    chain_lhs(p) >= 2.0 * (p.df() - 1.0) * d2a2(p)
}

/// Fidelity above which the generalized Bell measurement is optimal:
/// `(1 + 3d - d² + (d²-1)√(2d-1)) / (d(d²+2))`.
pub fn threshold_fidelity(d: usize) -> f64 {
    let df = d as f64;
    (1.0 + 3.0 * df - df * df + (df * df - 1.0) * (2.0 * df - 1.0).sqrt()) / (df * (df * df + 2.0))
}

/// Open fidelity interval on which the mixed pair/Fourier measurement beats
/// the Bell measurement on average.
///
/// `lo` is where pair outcomes become NPT and `hi` is where the Bell outcome
/// overtakes them. For `d = 2` the two measurements coincide up to relabeling
/// and the interval carries no advantage.
pub fn advantage_interval(d: usize) -> (f64, f64) {
    let df = d as f64;
    let lo = (1.0 - df + df * df + (df * df - 1.0) * 3f64.sqrt()) / (df * (df * df + 2.0 * df - 2.0));
    let hi = (1.0 + (df * df - 1.0) * (df + 2.0).sqrt()) / (df * (df * df + df - 1.0));
    (lo, hi)
}

/// Integer data of a fidelity of the form `(c + k√r) / m`, kept in lowest
/// terms with `r` squarefree and `m > 0`. A rational value has `k = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Radical {
    pub constant: i128,
    pub coefficient: i128,
    pub radicand: i128,
    pub denominator: i128,
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Radical {
    /// Normalizes `(constant + coefficient √radicand) / denominator`.
    pub fn new(constant: i128, coefficient: i128, radicand: i128, denominator: i128) -> Self {
        assert!(radicand >= 0 && denominator != 0, "invalid radical");
        let (mut c, mut k, mut r, mut m) = (constant, coefficient, radicand, denominator);
        let mut s = 2;
        while s * s <= r {
            while r % (s * s) == 0 {
                r /= s * s;
                k *= s;
            }
            s += 1;
        }
        if r == 0 {
            k = 0;
        }
        if r == 1 {
            c += k;
            k = 0;
        }
        if k == 0 {
            r = 1;
        }
        if m < 0 {
            (c, k, m) = (-c, -k, -m);
        }
        let g = gcd(gcd(c, k), m);
        Self {
            constant: c / g,
            coefficient: k / g,
            radicand: r,
            denominator: m / g,
        }
    }

    pub fn value(&self) -> f64 {
        (self.constant as f64 + self.coefficient as f64 * (self.radicand as f64).sqrt())
            / self.denominator as f64
    }
}

impl std::fmt::Display for Radical {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let root = match self.coefficient {
            1 => format!("√{}", self.radicand),
            -1 => format!("-√{}", self.radicand),
            k => format!("{k}√{}", self.radicand),
        };
        let numerator = match (self.constant, self.coefficient) {
            (c, 0) => c.to_string(),
            (0, _) => root,
            (c, k) if k > 0 => format!("({c}+{root})"),
            (c, _) => format!("({c}{root})"),
        };
        if self.denominator == 1 {
            write!(f, "{numerator}")
        } else {
            write!(f, "{numerator}/{}", self.denominator)
        }
    }
}

/// Exact forms of `threshold_fidelity` and both `advantage_interval` ends.
pub fn exact_forms(d: usize) -> (Radical, Radical, Radical) {
    let d = d as i128;
    let d2 = d * d;
    let threshold = Radical::new(1 + 3 * d - d2, d2 - 1, 2 * d - 1, d * (d2 + 2));
    let lo = Radical::new(1 - d + d2, d2 - 1, 3, d * (d2 + 2 * d - 2));
    let hi = Radical::new(1, d2 - 1, d + 2, d * (d2 + d - 1));
    (threshold, lo, hi)
}

/// Average outcome negativity of a complete rank-one measurement. Every
/// outcome has probability `1/d²`, so this is the plain mean over members.
pub fn average_negativity(p: &IsoParams, ens: &MeasurementEnsemble) -> Result<f64> {
    average_negativity_with(p, ens, negativity_closed)
}

/// [`average_negativity`] with a caller-supplied outcome negativity.
pub fn average_negativity_with<N>(p: &IsoParams, ens: &MeasurementEnsemble, outcome: N) -> Result<f64>
where
    N: Fn(&IsoParams, &SchmidtVector) -> Result<f64>,
{
    if ens.d() != p.d() {
        return Err(Error::DimensionMismatch {
            expected: p.d(),
            got: ens.d(),
        });
    }
    ens.check_completeness()?;
    let mut total = 0.0;
    for v in ens.vectors() {
        let lam = states::schmidt_spectrum(v, p.d())?;
        total += outcome(p, &lam)?;
    }
    Ok(total / (p.d() * p.d()) as f64)
}

/// Closed-form averages of the two named measurements:
/// `(Bell, mixed) = (N_bell, ((d-1) N_pair + N_bell)/d)`.
pub fn ensemble_averages(p: &IsoParams) -> (f64, f64) {
    let bell = negativity_bell(p);
    let pair = negativity_pair(p);
    let df = p.df();
    (bell, ((df - 1.0) * pair + bell) / df)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::hermitian_eigenvalues;
    use crate::states::{bell_measurement, mixed_measurement};
    use crate::tensor::partial_transpose_second;
    use approx::assert_abs_diff_eq;

    fn iso(d: usize, f: f64) -> IsoParams {
        IsoParams::new(d, f).unwrap()
    }

    fn sv(v: &[f64]) -> SchmidtVector {
        SchmidtVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn post_state_limits() {
        let d = 3;
        let mixed = post_state_closed(&iso(d, 1.0 / 9.0), &sv(&[0.6, 0.3, 0.1])).unwrap();
        assert!(mixed.max_abs_diff(&ComplexMatrix::identity(9).scale(1.0 / 9.0)) < 1e-15);
        let pure = post_state_closed(&iso(d, 1.0), &SchmidtVector::uniform(3, 3).unwrap()).unwrap();
        let phi = ComplexMatrix::projector(&states::max_entangled(3));
        assert!(pure.max_abs_diff(&phi) < 1e-15);
    }

    #[test]
    fn post_state_has_unit_trace() {
        for d in 2..6 {
            for f in [0.0, 0.2, 0.56, 0.9, 1.0] {
                let lam = SchmidtVector::uniform(2, d).unwrap();
                let m = post_state_closed(&iso(d, f), &lam).unwrap();
                assert_abs_diff_eq!(m.trace().re, 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn product_outcome_is_ppt() {
        let p = iso(3, 0.9);
        let spec = pt_spectrum_closed(&p, &sv(&[1.0, 0.0, 0.0])).unwrap();
        let d2a2 = 9.0 * p.a() * p.a();
        for e in &spec.pair_eigs {
            // no coherence between |kl⟩ and |lk⟩, so both branches coincide
            assert_eq!(e.plus, e.minus);
            let expected = if e.k == 0 { d2a2 + 3.0 * p.a() * p.b() } else { d2a2 };
            assert_abs_diff_eq!(e.minus, expected, epsilon = 1e-15);
        }
        assert!(spec.min() >= 0.0);
        assert_eq!(negativity_closed(&p, &sv(&[1.0, 0.0, 0.0])).unwrap(), 0.0);
    }

    #[test]
    fn pt_minus_branch_spot_value() {
        // a = 0.05, b = 0.55: 9a² + 2ab - b²/3
        let spec = pt_spectrum_closed(&iso(3, 0.6), &SchmidtVector::uniform(3, 3).unwrap()).unwrap();
        for e in &spec.pair_eigs {
            assert_abs_diff_eq!(e.minus, 0.0225 + 0.055 - 0.3025 / 3.0, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(spec.trace(), 1.0, epsilon = 1e-14);
        assert_eq!(spec.sorted_values().len(), 9);
    }

    #[test]
    fn pt_spectrum_matches_eigensolver() {
        let p = iso(3, 0.56);
        let lam = sv(&[0.5, 0.3, 0.2]);
        let pt = partial_transpose_second(&post_state_closed(&p, &lam).unwrap(), 3, 3).unwrap();
        let numeric = hermitian_eigenvalues(&pt).unwrap();
        let closed = pt_spectrum_closed(&p, &lam).unwrap().sorted_values();
        for (x, y) in numeric.iter().zip(&closed) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-12);
        }
    }

    #[test]
    fn negativity_spot_values() {
        let uniform = SchmidtVector::uniform(3, 3).unwrap();
        assert_abs_diff_eq!(negativity_closed(&iso(3, 1.0), &uniform).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(negativity_closed(&iso(3, 0.6), &uniform).unwrap(), 0.07, epsilon = 1e-12);
        assert_abs_diff_eq!(
            negativity_closed(&iso(3, 0.56), &sv(&[0.5, 0.5, 0.0])).unwrap(),
            0.0169625,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(negativity_pair(&iso(3, 0.56)), 0.0169625, epsilon = 1e-12);
    }

    #[test]
    fn upper_bound_cases() {
        let uniform = SchmidtVector::uniform(3, 3).unwrap();
        for f in [0.5, 0.6, 0.8, 1.0] {
            let p = iso(3, f);
            assert_abs_diff_eq!(
                negativity_upper_bound(&p, &uniform).unwrap(),
                negativity_closed(&p, &uniform).unwrap(),
                epsilon = 1e-15
            );
        }
        let p = iso(2, 0.9);
        let lam = sv(&[0.7, 0.3]);
        let bound = negativity_upper_bound(&p, &lam).unwrap();
        let value = negativity_closed(&p, &lam).unwrap();
        assert!(bound > value, "{bound} vs {value}");
        assert_eq!(negativity_upper_bound(&iso(3, 1.0 / 9.0), &uniform).unwrap(), 0.0);
    }

    #[test]
    fn uniform_rank_cases() {
        let p = iso(3, 0.56);
        assert_eq!(negativity_uniform_rank(&p, 1).unwrap(), 0.0);
        assert_abs_diff_eq!(negativity_uniform_rank(&p, 2).unwrap(), 0.0169625, epsilon = 1e-12);
        assert_abs_diff_eq!(negativity_uniform_rank(&p, 3).unwrap(), negativity_bell(&p), epsilon = 1e-15);
        assert!(negativity_uniform_rank(&p, 0).is_err());
        assert!(negativity_uniform_rank(&p, 4).is_err());
    }

    #[test]
    fn uniform_rank_is_exact() {
        for d in 2..7 {
            for r in 1..=d {
                for f in [0.3, 0.55, 0.7, 0.95] {
                    let p = iso(d, f);
                    let lam = SchmidtVector::uniform(r, d).unwrap();
                    assert_abs_diff_eq!(
                        negativity_uniform_rank(&p, r).unwrap(),
                        negativity_closed(&p, &lam).unwrap(),
                        epsilon = 1e-14
                    );
                }
            }
        }
    }

    #[test]
    fn bell_negativity_values() {
        assert_abs_diff_eq!(negativity_bell(&iso(3, 0.6)), 0.07, epsilon = 1e-12);
        assert_abs_diff_eq!(negativity_bell(&iso(3, 5.0 / 9.0)), 0.0, epsilon = 1e-12);
        for d in 2..10 {
            assert_abs_diff_eq!(negativity_bell(&iso(d, 1.0)), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn bell_negativity_monotone() {
        for d in 2..8 {
            let mut prev = 0.0;
            for i in 0..=1000 {
                let n = negativity_bell(&iso(d, i as f64 / 1000.0));
                assert!(n >= prev, "d={d} i={i}");
                prev = n;
            }
        }
    }

    #[test]
    fn condition_final_spot() {
        assert!(condition_final(&iso(3, 0.58)));
        assert!(!condition_final(&iso(3, 0.55)));
    }

    #[test]
    fn threshold_values() {
        assert_abs_diff_eq!(threshold_fidelity(3), (1.0 + 8.0 * 5f64.sqrt()) / 33.0, epsilon = 1e-15);
        assert_abs_diff_eq!(threshold_fidelity(3), 0.572380, epsilon = 1e-6);
        assert_abs_diff_eq!(threshold_fidelity(2), (1.0 + 3f64.sqrt()) / 4.0, epsilon = 1e-15);
        let mut prev = threshold_fidelity(2);
        for d in 3..=100 {
            let t = threshold_fidelity(d);
            assert!(t < prev);
            prev = t;
        }
        assert_abs_diff_eq!(prev, 0.131327987463, epsilon = 1e-11);
        // decays like √(2/d)
        assert!(threshold_fidelity(10_000) < 0.02);
    }

    #[test]
    fn interval_values() {
        let (lo, hi) = advantage_interval(3);
        assert_abs_diff_eq!(lo, (7.0 + 8.0 * 3f64.sqrt()) / 39.0, epsilon = 1e-15);
        assert_abs_diff_eq!(hi, (1.0 + 8.0 * 5f64.sqrt()) / 33.0, epsilon = 1e-15);
        assert_abs_diff_eq!(hi, threshold_fidelity(3), epsilon = 1e-15);
        assert!((advantage_interval(4).1 - threshold_fidelity(4)).abs() > 1e-3);
        for d in 2..=50 {
            let (lo, hi) = advantage_interval(d);
            assert!(lo < hi, "d={d}");
        }
    }

    #[test]
    fn exact_forms_match_decimals() {
        for d in 2..=12 {
            let (t, lo, hi) = exact_forms(d);
            let (l, h) = advantage_interval(d);
            assert_abs_diff_eq!(t.value(), threshold_fidelity(d), epsilon = 1e-14);
            assert_abs_diff_eq!(lo.value(), l, epsilon = 1e-14);
            assert_abs_diff_eq!(hi.value(), h, epsilon = 1e-14);
        }
        let (t, lo, _) = exact_forms(3);
        assert_eq!(t.to_string(), "(1+8√5)/33");
        assert_eq!(lo.to_string(), "(7+8√3)/39");
        let (t, _, _) = exact_forms(5);
        assert_eq!(t.to_string(), "7/15");
        assert_eq!(exact_forms(2).0.to_string(), "(1+√3)/4");
    }

    #[test]
    fn radical_normalization() {
        assert_eq!(Radical::new(2, 4, 8, 6).to_string(), "(1+4√2)/3");
        assert_eq!(Radical::new(0, -3, 5, -6).to_string(), "√5/2");
        assert_eq!(Radical::new(4, 2, 0, 2).to_string(), "2");
    }

    #[test]
    fn averages_over_named_ensembles() {
        let p = iso(3, 0.56);
        let bell = average_negativity(&p, &bell_measurement(3)).unwrap();
        assert_abs_diff_eq!(bell, negativity_bell(&p), epsilon = 1e-12);
        let mixed = average_negativity(&p, &mixed_measurement(3)).unwrap();
        assert_abs_diff_eq!(mixed, (6.0 * 0.0169625 + 3.0 * 0.0067) / 9.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ensemble_averages(&p).1, mixed, epsilon = 1e-12);
    }

    #[test]
    fn average_rejects_incomplete() {
        let mut v = bell_measurement(3).vectors().to_vec();
        v.truncate(8);
        let ens = MeasurementEnsemble::from_vectors(3, v).unwrap();
        assert!(matches!(
            average_negativity(&iso(3, 0.7), &ens),
            Err(Error::IncompleteEnsemble(_))
        ));
        assert!(average_negativity(&iso(2, 0.7), &bell_measurement(3)).is_err());
    }

    #[test]
    fn rank_precondition() {
        let lam = SchmidtVector::uniform(3, 3).unwrap();
        assert!(negativity_closed(&iso(2, 0.8), &lam).is_err());
        assert!(pt_spectrum_closed(&iso(2, 0.8), &lam).is_err());
        assert!(post_state_closed(&iso(2, 0.8), &lam).is_err());
    }
}

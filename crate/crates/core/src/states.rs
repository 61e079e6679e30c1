//! Isotropic states, Schmidt-form measurement vectors and the two rank-one
//! measurements compared throughout the crate.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::eigen;
use crate::error::{Error, Result};
use crate::tensor::{ComplexMatrix, KetVector};

/// Schmidt coefficients below this are treated as exact zeros.
pub const SCHMIDT_ZERO_TOL: f64 = 1e-12;
/// Tolerance on `Σ λ = 1`.
pub const SCHMIDT_SUM_TOL: f64 = 1e-12;
/// Entrywise tolerance for `Σ |v⟩⟨v| = I`.
pub const COMPLETENESS_TOL: f64 = 1e-10;

/// Local dimension and fidelity of an isotropic state, with the derived
/// weights `a = (1-F)/(d²-1)` on the identity and `b = (d²F-1)/(d²-1)` on
/// the maximally entangled projector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsoParams {
    d: usize,
    fidelity: f64,
    a: f64,
    b: f64,
}

impl IsoParams {
    pub fn new(d: usize, fidelity: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        if !(0.0..=1.0).contains(&fidelity) {
            return Err(Error::FidelityOutOfRange(fidelity));
        }
        let d2m1 = (d * d - 1) as f64;
        let a = (1.0 - fidelity) / d2m1;
        let b = ((d * d) as f64 * fidelity - 1.0) / d2m1;
        Ok(Self { d, fidelity, a, b })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn fidelity(&self) -> f64 {
        self.fidelity
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub(crate) fn df(&self) -> f64 {
        self.d as f64
    }
}

/// Descending Schmidt coefficients of a bipartite pure state.
///
/// Entries are stored sorted in nonincreasing order; trailing zeros are
/// allowed and `rank` counts the strictly positive ones.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtVector {
    lambdas: Vec<f64>,
    rank: usize,
}

impl SchmidtVector {
    /// Accepts nonnegative weights summing to one (within `1e-12`) in any
    /// order; they are sorted descending. Values in `(-1e-12, 1e-12)` are
    /// snapped to zero.
    pub fn new(mut lambdas: Vec<f64>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::InvalidSchmidt("empty".into()));
        }
        for x in &mut lambdas {
            if !x.is_finite() || *x < -SCHMIDT_ZERO_TOL {
                return Err(Error::InvalidSchmidt(format!("negative or non-finite weight {x}")));
            }
            if *x < SCHMIDT_ZERO_TOL {
                *x = 0.0;
            }
        }
        let sum: f64 = lambdas.iter().sum();
        if (sum - 1.0).abs() > SCHMIDT_SUM_TOL {
            return Err(Error::InvalidSchmidt(format!("weights sum to {sum}")));
        }
        lambdas.sort_by(|x, y| y.total_cmp(x));
        let rank = lambdas.iter().take_while(|&&x| x > 0.0).count();
        Ok(Self { lambdas, rank })
    }

    /// Like [`SchmidtVector::new`], but rescales nonnegative weights to sum to one.
    pub fn normalized(lambdas: Vec<f64>) -> Result<Self> {
        let sum: f64 = lambdas.iter().sum();
        if !sum.is_finite() || sum <= 0.0 {
            return Err(Error::InvalidSchmidt(format!("weights sum to {sum}")));
        }
        Self::new(lambdas.into_iter().map(|x| x / sum).collect())
    }

    /// `1/rank` on the first `rank` of `d` entries.
    pub fn uniform(rank: usize, d: usize) -> Result<Self> {
        if rank == 0 || rank > d {
            return Err(Error::RankExceedsDimension { rank, d });
        }
        let mut lambdas = vec![0.0; d];
        lambdas[..rank].fill(1.0 / rank as f64);
        Ok(Self { lambdas, rank })
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The nonzero coefficients `λ_0 ≥ … ≥ λ_{R-1} > 0`.
    pub fn support(&self) -> &[f64] {
        &self.lambdas[..self.rank]
    }

    pub(crate) fn check_dim(&self, d: usize) -> Result<()> {
        if self.rank > d {
            Err(Error::RankExceedsDimension { rank: self.rank, d })
        } else {
            Ok(())
        }
    }
}

/// A rank-one projective measurement on a `d²`-dimensional space.
#[derive(Debug, Clone)]
pub struct MeasurementEnsemble {
    d: usize,
    vectors: Vec<KetVector>,
}

impl MeasurementEnsemble {
    /// Checks dimensions only; completeness is checked by
    /// [`MeasurementEnsemble::check_completeness`].
    pub fn from_vectors(d: usize, vectors: Vec<KetVector>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.dim() != d * d) {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                got: v.dim(),
            });
        }
        Ok(Self { d, vectors })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn vectors(&self) -> &[KetVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Largest entrywise deviation of `Σ|v⟩⟨v|` from the identity.
    pub fn completeness_residual(&self) -> f64 {
        let n = self.d * self.d;
        let mut sum = ComplexMatrix::zeros(n, n);
        for v in &self.vectors {
            sum = &sum + &ComplexMatrix::projector(v);
        }
        sum.max_abs_diff(&ComplexMatrix::identity(n))
    }

    pub fn check_completeness(&self) -> Result<()> {
        let r = self.completeness_residual();
        if r > COMPLETENESS_TOL || self.vectors.len() != self.d * self.d {
            Err(Error::IncompleteEnsemble(r))
        } else {
            Ok(())
        }
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn omega(d: usize, power: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * ((power % d) as f64) / d as f64)
}

/// `|φ_d⟩ = Σ_j |jj⟩ / √d`.
pub fn max_entangled(d: usize) -> KetVector {
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
    let w = 1.0 / (d as f64).sqrt();
    for j in 0..d {
        amps[j * d + j] = c(w);
    }
    KetVector::normalized(amps).expect("nonzero")
}

/// `F Φ_d + (1-F)/(d²-1) (I ⊗ I - Φ_d)`.
pub fn isotropic(p: &IsoParams) -> ComplexMatrix {
    let n = p.d * p.d;
    let phi = ComplexMatrix::projector(&max_entangled(p.d));
    // a I + b Φ_d
    &ComplexMatrix::identity(n).scale(p.a) + &phi.scale(p.b)
}

/// `Σ_j √λ_j |jj⟩`.
pub fn schmidt_state(lam: &SchmidtVector, d: usize) -> Result<KetVector> {
    lam.check_dim(d)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
    for (j, &l) in lam.support().iter().enumerate() {
        amps[j * d + j] = c(l.sqrt());
    }
    KetVector::new(amps)
}

/// `(|kl⟩ ± |lk⟩)/√2`; `plus` selects the sign.
pub fn pair_state(k: usize, l: usize, plus: bool, d: usize) -> Result<KetVector> {
    if k >= l || l >= d {
        return Err(Error::InvalidArgument(format!(
            "pair state needs 0 <= k < l < d, got k={k}, l={l}, d={d}"
        )));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
    let s = std::f64::consts::FRAC_1_SQRT_2;
    amps[k * d + l] = c(s);
    amps[l * d + k] = c(if plus { s } else { -s });
    KetVector::new(amps)
}

/// `Σ_j ω_d^{sj} |jj⟩ / √d` with `ω_d = exp(2πi/d)`.
pub fn fourier_diag_state(s: usize, d: usize) -> Result<KetVector> {
    if s >= d {
        return Err(Error::InvalidArgument(format!("phase index {s} out of range for d={d}")));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
    let w = 1.0 / (d as f64).sqrt();
    for j in 0..d {
        amps[j * d + j] = omega(d, s * j) * w;
    }
    KetVector::new(amps)
}

/// `(I ⊗ X^s Z^t)|φ_d⟩` with `X|j⟩ = |j+1⟩`, `Z|j⟩ = ω_d^j |j⟩`.
pub fn gen_bell(s: usize, t: usize, d: usize) -> Result<KetVector> {
    if s >= d || t >= d {
        return Err(Error::InvalidArgument(format!("Bell index ({s},{t}) out of range for d={d}")));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
    let w = 1.0 / (d as f64).sqrt();
    for j in 0..d {
        amps[j * d + (j + s) % d] = omega(d, t * j) * w;
    }
    KetVector::new(amps)
}

/// The generalized Bell measurement `{φ_st}`.
pub fn bell_measurement(d: usize) -> MeasurementEnsemble {
    let vectors = (0..d)
        .flat_map(|s| (0..d).map(move |t| gen_bell(s, t, d).expect("indices in range")))
        .collect();
    MeasurementEnsemble { d, vectors }
}

/// Pair states `ψ_kl^±` for all `k < l`, followed by the `d` Fourier states.
pub fn mixed_measurement(d: usize) -> MeasurementEnsemble {
    let mut vectors = Vec::with_capacity(d * d);
    for k in 0..d {
        for l in (k + 1)..d {
            vectors.push(pair_state(k, l, true, d).expect("k < l"));
            vectors.push(pair_state(k, l, false, d).expect("k < l"));
        }
    }
    vectors.extend((0..d).map(|s| fourier_diag_state(s, d).expect("s < d")));
    MeasurementEnsemble { d, vectors }
}

/// Schmidt coefficients of a ket on `C^d ⊗ C^d`: eigenvalues of `C C†`
/// where `C` is the `d × d` coefficient matrix.
pub fn schmidt_spectrum(psi: &KetVector, d: usize) -> Result<SchmidtVector> {
    if psi.dim() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            got: psi.dim(),
        });
    }
    let coeff = ComplexMatrix::from_row_major(d, d, psi.amplitudes().to_vec())?;
    let gram = &coeff * &coeff.adjoint();
    let eig = eigen::hermitian_eigenvalues(&gram)?;
    SchmidtVector::normalized(eig.into_iter().map(|x| x.max(0.0)).collect())
}

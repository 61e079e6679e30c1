//! Brute-force route: full four-qudit state, numeric projection and
//! eigendecomposition. Shares no closed forms with [`crate::analytic`].

use crate::eigen::trace_norm_hermitian;
use crate::error::{Error, Result};
use crate::states::{isotropic, IsoParams};
use crate::tensor::{contract_13, kron, partial_transpose_second, ComplexMatrix, KetVector};

/// Largest local dimension the oracle will expand (`d⁴ = 625`).
pub const MAX_ORACLE_DIM: usize = 5;
/// Negative negativities down to this are treated as roundoff.
pub const NEGATIVITY_CLIP: f64 = 1e-10;

/// `ρ_F ⊗ ρ_F` on systems `1,2,3,4`.
pub fn build_joint(p: &IsoParams) -> Result<ComplexMatrix> {
    if p.d() > MAX_ORACLE_DIM {
        return Err(Error::OracleScaleExceeded(p.d()));
    }
    let link = isotropic(p);
    Ok(kron(&link, &link))
}

/// Projects systems 1,3 of `rho` on `psi`; returns the Born probability and
/// the normalized state on systems 2,4.
pub fn measure_outcome(rho: &ComplexMatrix, psi: &KetVector, d: usize) -> Result<(f64, ComplexMatrix)> {
    contract_13(rho, psi, d)
}

/// `(‖ρ^Γ‖₁ - 1)/(d - 1)` for a state on `C^d ⊗ C^d`.
pub fn negativity_numeric(rho: &ComplexMatrix, d: usize) -> Result<f64> {
    let pt = partial_transpose_second(rho, d, d)?;
    let n = (trace_norm_hermitian(&pt)? - 1.0) / (d as f64 - 1.0);
    if n >= 0.0 {
        Ok(n)
    } else if n >= -NEGATIVITY_CLIP {
        Ok(0.0)
    } else {
        Err(Error::NegativeNegativity(n))
    }
}

/// Ascending eigenvalues of `ρ^Γ`.
pub fn pt_spectrum_numeric(rho: &ComplexMatrix, d: usize) -> Result<Vec<f64>> {
    crate::eigen::hermitian_eigenvalues(&partial_transpose_second(rho, d, d)?)
}

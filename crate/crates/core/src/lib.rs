//! Negativity analytics for remote preparation of entanglement.
//!
//! Two identical isotropic links `ρ_F^{12} ⊗ ρ_F^{34}` on qudits are joined
//! by a rank-one measurement on systems 1 and 3, leaving an entangled state
//! on systems 2 and 4. This crate provides
//!
//! - closed forms for the outcome state, its partial-transpose spectrum and
//!   negativity for any Schmidt spectrum ([`analytic`]),
//! - the fidelity above which the generalized Bell measurement is optimal
//!   among rank-one measurements, and the interval where a pair/Fourier
//!   measurement beats it ([`analytic::threshold_fidelity`],
//!   [`analytic::advantage_interval`]),
//! - an independent brute-force route through the full four-qudit density
//!   matrix ([`oracle`]) on top of a small dense complex linear-algebra layer
//!   ([`tensor`], [`eigen`]),
//! - numerical searches and sweeps ([`search`]) and seeded self-checks
//!   ([`verify`]).
//!
//! Runnable walkthroughs live in the crate's `examples/` directory, e.g.
//! `cargo run --example strategy_scan`. The `rpe` binary exposes the same
//! functionality on the command line.
//!
//! Composite indices are big-endian throughout: `|i j⟩ ↦ i·d + j`, and the
//! four-party space is ordered `1, 2, 3, 4`.

#![forbid(unsafe_code)]

pub mod analytic;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod oracle;
pub mod output;
pub mod search;
pub mod states;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use states::{IsoParams, MeasurementEnsemble, SchmidtVector};
pub use tensor::{ComplexMatrix, KetVector};

//! Structural invariants checked against random inputs.

use approx::assert_abs_diff_eq;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rpe_lab::analytic::{
    advantage_interval, ensemble_averages, negativity_bell, negativity_closed, negativity_uniform_rank,
    negativity_upper_bound, post_state_closed, pt_spectrum_closed, threshold_fidelity,
};
use rpe_lab::eigen::hermitian_eigenvalues;
use rpe_lab::oracle::{build_joint, measure_outcome, negativity_numeric};
use rpe_lab::states::{isotropic, schmidt_spectrum, schmidt_state};
use rpe_lab::tensor::{kron, partial_transpose_second};
use rpe_lab::verify::random_schmidt;
use rpe_lab::{ComplexMatrix, IsoParams, KetVector, SchmidtVector};

fn random_unitary<R: Rng>(rng: &mut R, d: usize) -> ComplexMatrix {
    // Gram-Schmidt on the columns of a random complex matrix
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    for _ in 0..d {
        let mut v: Vec<Complex64> = (0..d)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        for u in &cols {
            let overlap: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= overlap * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(d, d, |i, j| cols[j][i])
}

fn conj(m: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].conj())
}

fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

fn random_density<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = random_matrix(rng, n, n);
    let m = &g * &g.adjoint();
    let t = m.trace().re;
    m.scale(1.0 / t)
}

#[test]
fn isotropic_state_is_twirl_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in 2..=3 {
        for _ in 0..20 {
            let p = IsoParams::new(d, rng.gen()).unwrap();
            let rho = isotropic(&p);
            let u = random_unitary(&mut rng, d);
            let w = kron(&u, &conj(&u));
            let rotated = &(&w * &rho) * &w.adjoint();
            assert!(rotated.max_abs_diff(&rho) < 1e-12);
        }
    }
}

#[test]
fn outcome_negativity_is_local_unitary_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for d in 2..=3 {
        for _ in 0..10 {
            let p = IsoParams::new(d, rng.gen()).unwrap();
            let joint = build_joint(&p).unwrap();
            let lam = random_schmidt(&mut rng, d);
            let psi = schmidt_state(&lam, d).unwrap();
            let w = kron(&random_unitary(&mut rng, d), &random_unitary(&mut rng, d));
            let rotated = KetVector::normalized(w.apply(psi.amplitudes())).unwrap();

            let (_, rho) = measure_outcome(&joint, &rotated, d).unwrap();
            let numeric = negativity_numeric(&rho, d).unwrap();
            let recovered = schmidt_spectrum(&rotated, d).unwrap();
            assert_abs_diff_eq!(numeric, negativity_closed(&p, &lam).unwrap(), epsilon = 1e-10);
            for (x, y) in recovered.lambdas().iter().zip(lam.lambdas()) {
                assert_abs_diff_eq!(x, y, epsilon = 1e-10);
            }
        }
    }
}

#[test]
fn closed_post_state_matches_projection() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for d in 2..=4 {
        for _ in 0..10 {
            let p = IsoParams::new(d, rng.gen()).unwrap();
            let lam = random_schmidt(&mut rng, d);
            let joint = build_joint(&p).unwrap();
            let (prob, rho) = measure_outcome(&joint, &schmidt_state(&lam, d).unwrap(), d).unwrap();
            let closed = post_state_closed(&p, &lam).unwrap();
            assert!(rho.max_abs_diff(&closed) < 1e-12);
            assert_abs_diff_eq!(prob, 1.0 / (d * d) as f64, epsilon = 1e-12);
        }
    }
}

#[test]
fn outcome_states_are_positive() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for d in 2..=3 {
        for _ in 0..20 {
            let p = IsoParams::new(d, rng.gen()).unwrap();
            let joint = build_joint(&p).unwrap();
            let amps: Vec<Complex64> = (0..d * d)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let psi = KetVector::normalized(amps).unwrap();
            let (_, rho) = measure_outcome(&joint, &psi, d).unwrap();
            assert!(rho.is_hermitian(1e-12));
            assert_abs_diff_eq!(rho.trace().re, 1.0, epsilon = 1e-12);
            assert!(hermitian_eigenvalues(&rho).unwrap()[0] > -1e-12);
        }
    }
}

#[test]
fn spectrum_equivalence_on_random_outcomes() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..200 {
        let d = rng.gen_range(2..=4);
        let p = IsoParams::new(d, rng.gen()).unwrap();
        let lam = random_schmidt(&mut rng, d);
        let rho = post_state_closed(&p, &lam).unwrap();
        let mut numeric = hermitian_eigenvalues(&partial_transpose_second(&rho, d, d).unwrap()).unwrap();
        numeric.sort_by(f64::total_cmp);
        let closed = pt_spectrum_closed(&p, &lam).unwrap().sorted_values();
        for (x, y) in numeric.iter().zip(&closed) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-10);
        }
    }
}

#[test]
fn bell_outcome_is_maximally_entangled_at_unit_fidelity() {
    for d in 2..=8 {
        let p = IsoParams::new(d, 1.0).unwrap();
        assert_abs_diff_eq!(negativity_bell(&p), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(negativity_uniform_rank(&p, d).unwrap(), 1.0, epsilon = 1e-12);
    }
}

fn schmidt_strategy(d: usize) -> impl Strategy<Value = SchmidtVector> {
    prop::collection::vec(0.0f64..1.0, d).prop_filter_map("zero weight", |w| {
        let total: f64 = w.iter().sum();
        (total > 1e-6).then(|| SchmidtVector::normalized(w).unwrap())
    })
}

fn params_and_schmidt() -> impl Strategy<Value = (IsoParams, SchmidtVector)> {
    (2usize..=8).prop_flat_map(|d| {
        (0.0f64..=1.0, schmidt_strategy(d)).prop_map(move |(f, lam)| (IsoParams::new(d, f).unwrap(), lam))
    })
}

fn small_matrix() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..=3, 1usize..=3, any::<u64>()).prop_map(|(r, c, seed)| {
        random_matrix(&mut ChaCha8Rng::seed_from_u64(seed), r, c)
    })
}

proptest! {
    #[test]
    fn kron_is_associative(a in small_matrix(), b in small_matrix(), c in small_matrix()) {
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!(left.max_abs_diff(&right) < 1e-14);
    }

    #[test]
    fn kron_mixed_product(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_matrix(&mut rng, 2, 3), random_matrix(&mut rng, 3, 2));
        let (c, e) = (random_matrix(&mut rng, 2, 2), random_matrix(&mut rng, 2, 3));
        let lhs = &kron(&a, &c) * &kron(&b, &e);
        let rhs = kron(&(&a * &b), &(&c * &e));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn partial_transpose_is_an_involution(seed in any::<u64>(), da in 1usize..=3, db in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_density(&mut rng, da * db);
        let pt = partial_transpose_second(&rho, da, db).unwrap();
        prop_assert!(pt.is_hermitian(1e-14));
        prop_assert!((pt.trace() - rho.trace()).norm() < 1e-14);
        let back = partial_transpose_second(&pt, da, db).unwrap();
        prop_assert_eq!(back.entries(), rho.entries());
    }

    #[test]
    fn product_states_stay_positive_under_pt(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = kron(&random_density(&mut rng, 2), &random_density(&mut rng, 3));
        let eig = hermitian_eigenvalues(&partial_transpose_second(&rho, 2, 3).unwrap()).unwrap();
        prop_assert!(eig[0] > -1e-12);
    }

    #[test]
    fn closed_negativity_is_bounded((p, lam) in params_and_schmidt()) {
        let n = negativity_closed(&p, &lam).unwrap();
        let bound = negativity_upper_bound(&p, &lam).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&n));
        prop_assert!(n <= bound + 1e-12);
        let spec = pt_spectrum_closed(&p, &lam).unwrap();
        prop_assert!((spec.trace() - 1.0).abs() < 1e-12);
        let from_spectrum = (spec.sorted_values().iter().map(|x| x.abs()).sum::<f64>() - 1.0)
            / (p.d() as f64 - 1.0);
        prop_assert!((from_spectrum - n).abs() < 1e-12);
    }

    #[test]
    fn bell_dominates_above_threshold((p, lam) in params_and_schmidt()) {
        prop_assume!(p.fidelity() >= threshold_fidelity(p.d()));
        prop_assert!(negativity_closed(&p, &lam).unwrap() <= negativity_bell(&p) + 1e-12);
    }

    #[test]
    fn mixed_wins_exactly_inside_interval(d in 3usize..=8, f in 0.0f64..=1.0) {
        let (lo, hi) = advantage_interval(d);
        let (bell, mixed) = ensemble_averages(&IsoParams::new(d, f).unwrap());
        if f > lo + 1e-9 && f < hi - 1e-9 {
            prop_assert!(mixed > bell);
        } else if f < lo - 1e-9 || f > hi + 1e-9 {
            prop_assert!(mixed <= bell);
        }
    }

    #[test]
    fn uniform_rank_matches_general_formula(d in 2usize..=8, f in 0.0f64..=1.0, r in 1usize..=8) {
        prop_assume!(r <= d);
        let p = IsoParams::new(d, f).unwrap();
        let lam = SchmidtVector::uniform(r, d).unwrap();
        prop_assert!(
            (negativity_uniform_rank(&p, r).unwrap() - negativity_closed(&p, &lam).unwrap()).abs() < 1e-12
        );
    }
}

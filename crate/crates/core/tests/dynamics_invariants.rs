// Copyright 2026 The qsl-reach Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::FRAC_PI_4;

use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use qsl_core::dynamics::{dissipator, integrate, master_rhs, theta_rate_check, SystemSpec};
use qsl_core::linalg::{c, dagger, trace, ComplexMatrix, PureState};
use qsl_core::models::{qubit_spec, QubitParams};
use qsl_core::qsl::coefficients;
use qsl_core::reachset::{random_system, trial_seed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix(dim: usize, re: &[f64], im: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |i, j| c(re[i * dim + j], im[i * dim + j]))
}

fn hermitian(m: &ComplexMatrix) -> ComplexMatrix {
    (m + &dagger(m)).scale_real(0.5)
}

fn entries(dim: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    let n = dim * dim;
    (
        prop::collection::vec(-1.0f64..1.0, n),
        prop::collection::vec(-1.0f64..1.0, n),
    )
}

proptest! {
    #[test]
    fn dissipator_is_traceless((mr, mi) in entries(3), (rr, ri) in entries(3)) {
        let m = matrix(3, &mr, &mi);
        let rho = hermitian(&matrix(3, &rr, &ri));
        let d = dissipator(&m, &rho).unwrap();
        prop_assert!(trace(&d).norm() < 1e-12);
    }

    #[test]
    fn generator_is_hermitian_and_traceless(
        (hr, hi) in entries(4),
        (mr, mi) in entries(4),
        (rr, ri) in entries(4),
    ) {
        let h = hermitian(&matrix(4, &hr, &hi));
        let spec = SystemSpec::new(PureState::basis(4, 0), h, vec![matrix(4, &mr, &mi)]).unwrap();
        let rho = hermitian(&matrix(4, &rr, &ri));
        let out = master_rhs(&spec, None, &rho).unwrap();
        prop_assert!(out.hermiticity_defect() < 1e-12);
        prop_assert!(trace(&out).norm() < 1e-12);
    }
}

#[test]
fn random_trajectories_keep_state_invariants() {
    for k in 0..12 {
        let dim = 2 + k % 3;
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(11, dim, k));
        let spec = random_system(&mut rng, dim).unwrap();
        let traj = integrate(&spec, None, 0.5, 1e-3).unwrap();
        assert_eq!(traj.len(), 501);
        for (i, rho) in traj.states.iter().enumerate() {
            assert!((trace(rho).re - 1.0).abs() <= 1e-9 * (1.0 + i as f64));
            assert!(rho.hermiticity_defect() <= 1e-9);
            assert!(rho.is_positive_semidefinite(1e-8));
        }
    }
}

#[test]
fn static_system_rate_samples_are_trivial() {
    let spec = SystemSpec::new(PureState::basis(2, 1), ComplexMatrix::zeros(2), vec![]).unwrap();
    let traj = integrate(&spec, None, 0.3, 1e-2).unwrap();
    assert!(traj.thetas.iter().all(|&t| t == 0.0));
    let coeffs = coefficients(&spec).unwrap();
    // Θ never leaves zero, so no sample survives the sinΘ cutoff.
    assert!(theta_rate_check(&traj, &coeffs).iter().all(|s| s.lhs <= s.rhs));
}

#[test]
fn rate_bound_on_reference_qubits() {
    let damped = QubitParams {
        gamma: 1.0,
        ..Default::default()
    };
    let rotating = QubitParams {
        theta: FRAC_PI_4,
        ..Default::default()
    };
    for p in [damped, rotating] {
        let spec = qubit_spec(&p, false).unwrap();
        let coeffs = coefficients(&spec).unwrap();
        let traj = integrate(&spec, None, 1.0, 1e-3).unwrap();
        let samples = theta_rate_check(&traj, &coeffs);
        assert!(samples.len() > 900, "{}", samples.len());
        for s in samples {
            assert!(s.lhs <= s.rhs + 1e-4, "{p:?} at t = {}: {} > {}", s.time, s.lhs, s.rhs);
        }
    }
}

#[test]
fn closed_rotation_overlap() {
    let p = QubitParams {
        theta: FRAC_PI_4,
        omega: 1.3,
        ..Default::default()
    };
    let traj = integrate(&qubit_spec(&p, false).unwrap(), None, 1.0, 1e-3).unwrap();
    for (t, f) in traj.times.iter().zip(&traj.fidelities) {
        assert_abs_diff_eq!(*f, (p.omega * t).cos().powi(2), epsilon = 1e-10);
    }
}

// Copyright 2026 The qsl-reach Authors
// SPDX-License-Identifier: Apache-2.0

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::ReachError;
use crate::dynamics::{integrate, theta_rate_check, SystemSpec, Trajectory};
use crate::linalg::{c, dagger, frobenius_norm, ComplexMatrix, PureState};
use crate::qsl::{coefficients, lambda_from_fidelity, qsl_time, QslCoefficients};

/// A trial fails when `T − T*` drops below `−MARGIN_TOL`, or when the
/// sampled angle rate exceeds its bound by more than `MARGIN_TOL` relative
/// to `1 + bound`.
pub const MARGIN_TOL: f64 = 1e-4;

pub const RANDOM_SYSTEM_DISTRIBUTION: &str = "H=(X+X^dag)/2 with X iid complex Gaussian, \
     rescaled to Frobenius norm s_H ~ U[0,2); one Lindblad op with iid complex Gaussian entries, \
     rescaled to Frobenius norm s_M ~ U[0,2); psi0 iid complex Gaussian, normalized; \
     per-trial ChaCha8 stream seeded by splitmix64(master, dim, trial)";

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent per-trial seed, so results do not depend on thread scheduling.
pub fn trial_seed(master: u64, dim: usize, trial: usize) -> u64 {
    splitmix64(master ^ splitmix64(((dim as u64) << 32) | trial as u64))
}

fn gaussian_matrix(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

fn with_norm(m: ComplexMatrix, norm: f64) -> ComplexMatrix {
    let f = frobenius_norm(&m);
    if f > 0.0 {
        m.scale_real(norm / f)
    } else {
        m
    }
}

/// Draws one system from [`RANDOM_SYSTEM_DISTRIBUTION`].
pub fn random_system(rng: &mut impl Rng, dim: usize) -> Result<SystemSpec, ReachError> {
    if dim < 2 {
        return Err(ReachError::InvalidGrid(format!("dimension must be at least 2, got {dim}")));
    }
    let x = gaussian_matrix(rng, dim);
    let h = (&x + &dagger(&x)).scale_real(0.5);
    let h = with_norm(h, rng.random_range(0.0..2.0));
    let m = with_norm(gaussian_matrix(rng, dim), rng.random_range(0.0..2.0));
    let amps = (0..dim)
        .map(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let psi0 = PureState::normalized(amps).map_err(crate::dynamics::DynamicsError::from)?;
    // Symmetrize exactly so the Hermiticity check sees zero defect.
    let h = ComplexMatrix::from_fn(dim, |i, j| 0.5 * (h.get(i, j) + h.get(j, i).conj()));
    Ok(SystemSpec::new(psi0, h, vec![m])?)
}

/// Final-time comparison of a trajectory with the bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck {
    pub t: f64,
    pub theta_t: f64,
    pub lambda: f64,
    pub t_star: f64,
    /// `T − T*(λ_T)`.
    pub margin: f64,
}

impl BoundCheck {
    pub fn holds(&self) -> bool {
        self.margin >= -MARGIN_TOL
    }
}

/// Reads `Θ_T` off the last sample and evaluates `T*` at the reached radius.
pub fn check_bound(traj: &Trajectory, coeffs: &QslCoefficients) -> BoundCheck {
    let t = traj.final_time();
    let fid = *traj.fidelities.last().expect("nonempty trajectory");
    let radius = lambda_from_fidelity(fid);
    let t_star = qsl_time(coeffs, radius);
    BoundCheck {
        t,
        theta_t: traj.final_theta(),
        lambda: radius.value(),
        t_star,
        margin: t - t_star,
    }
}

/// Outcome of one randomized trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRecord {
    pub trial: usize,
    pub seed: u64,
    pub dim: usize,
    /// Frobenius norms of the drawn `H` and `M`.
    pub h_norm: f64,
    pub m_norm: f64,
    pub t: f64,
    pub theta_t: f64,
    pub lambda: f64,
    pub t_star: f64,
    /// `T − T*(λ_T)`; nonnegative whenever the bound holds.
    pub margin: f64,
    pub rate_samples: usize,
    /// Largest `(rate − bound)/(1 + bound)` over the sampled times.
    pub rate_max_excess: f64,
}

impl VerifyRecord {
    pub fn margin_violated(&self) -> bool {
        self.margin < -MARGIN_TOL
    }

    pub fn rate_violated(&self) -> bool {
        self.rate_max_excess > MARGIN_TOL
    }

    pub fn violated(&self) -> bool {
        self.margin_violated() || self.rate_violated()
    }
}

/// Integrates one random system seeded by `seed` to `t` and compares the
/// reached radius with the bound.
pub fn verify_trial(trial: usize, seed: u64, dim: usize, t: f64, dt: f64) -> Result<VerifyRecord, ReachError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = random_system(&mut rng, dim)?;
    let coeffs = coefficients(&spec)?;
    let traj = integrate(&spec, None, t, dt)?;
    let check = check_bound(&traj, &coeffs);
    let samples = theta_rate_check(&traj, &coeffs);
    let rate_max_excess = samples
        .iter()
        .map(|s| s.excess() / (1.0 + s.rhs.abs()))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(VerifyRecord {
        trial,
        seed,
        dim,
        h_norm: frobenius_norm(spec.h_drift()),
        m_norm: frobenius_norm(&spec.lindblad_ops()[0]),
        t: check.t,
        theta_t: check.theta_t,
        lambda: check.lambda,
        t_star: check.t_star,
        margin: check.margin,
        rate_samples: samples.len(),
        rate_max_excess,
    })
}

/// Runs `n_trials` random systems for each dimension. Trial indices are
/// global and run over dimensions in the order given.
pub fn verify_bound(
    master_seed: u64,
    n_trials: usize,
    dims: &[usize],
    t: f64,
    dt: f64,
) -> Result<Vec<VerifyRecord>, ReachError> {
    let jobs: Vec<(usize, usize)> = dims
        .iter()
        .flat_map(|&d| (0..n_trials).map(move |k| (d, k)))
        .collect();
    jobs.into_par_iter()
        .enumerate()
        .map(|(trial, (dim, k))| verify_trial(trial, trial_seed(master_seed, dim, k), dim, t, dt))
        .collect()
}

// Copyright 2026 The qsl-reach Authors
// SPDX-License-Identifier: Apache-2.0

//! Speed-limit coefficients, the evolution-time bound and its inversion.
//!
//! For a pure initial state `ρ0 = |ψ0⟩⟨ψ0|` the bound reads
//!
//! ```text
//! T ≥ T* = 2λ/A + (2E/A²)·ln(E/(E + Aλ)),   λ = √(1 − cosΘ_T)
//! A = √2·‖i[H, ρ0] + Σ_k D†[M_k]ρ0‖_F
//! E = Σ_k ‖M_k ψ0‖² − |⟨ψ0|M_k|ψ0⟩|²
//! ```
//!
//! With a control Hamiltonian `u(t)·H_c`, `|u| ≤ u_max`, the commutator
//! terms are split by the triangle inequality (see [`coeff_a_controlled`]).

use serde::Serialize;
use thiserror::Error;

use crate::dynamics::{adjoint_dissipator, DynamicsError, SystemSpec};
use crate::linalg::{apply, commutator, expectation, frobenius_norm, outer, vector_norm, ComplexMatrix, PureState, I};
use crate::roots::{bisect_boundary, bisect_root};

/// Below this a coefficient is treated as zero.
pub const DEGENERATE_TOL: f64 = 1e-14;
/// Width of the final bracket in [`lambda_max`].
pub const LAMBDA_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QslError {
    #[error("system has a control Hamiltonian; use the controlled coefficient")]
    ControlPresent,
    #[error("system has no control Hamiltonian")]
    ControlMissing,
    #[error("{name} = {value} outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffSource {
    Generic,
    Controlled,
    ClosedForm,
}

/// The pair `(A, E)` entering the bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QslCoefficients {
    pub a: f64,
    pub e: f64,
    pub source: CoeffSource,
}

impl QslCoefficients {
    pub fn new(a: f64, e: f64, source: CoeffSource) -> Self {
        debug_assert!(a >= 0.0 && e >= 0.0, "coefficients are non-negative");
        Self { a, e, source }
    }
}

/// Distance `λ = √(1 − cosΘ) ∈ [0, 1]` of a final state from `ρ0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Radius(f64);

impl Radius {
    pub const ZERO: Radius = Radius(0.0);
    pub const ONE: Radius = Radius(1.0);

    pub fn new(lambda: f64) -> Result<Self, QslError> {
        if (0.0..=1.0).contains(&lambda) {
            Ok(Self(lambda))
        } else {
            Err(QslError::OutOfRange {
                name: "lambda",
                value: lambda,
                range: "[0, 1]",
            })
        }
    }

    /// Clamps into `[0, 1]`; NaN maps to zero.
    pub fn saturating(lambda: f64) -> Self {
        if lambda.is_nan() {
            Self(0.0)
        } else {
            Self(lambda.clamp(0.0, 1.0))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

/// `λ = √(1 − cosΘ)` for `Θ ∈ [0, π/2]`.
pub fn lambda_from_theta(theta_t: f64) -> Result<Radius, QslError> {
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&theta_t) {
        return Err(QslError::OutOfRange {
            name: "theta_T",
            value: theta_t,
            range: "[0, pi/2]",
        });
    }
    Ok(Radius::saturating((1.0 - theta_t.cos()).sqrt()))
}

pub fn theta_from_lambda(r: Radius) -> f64 {
    (1.0 - r.value() * r.value()).clamp(0.0, 1.0).acos()
}

/// `λ` reached when the overlap `⟨ψ0|ρ_T|ψ0⟩` equals `fidelity`.
pub fn lambda_from_fidelity(fidelity: f64) -> Radius {
    Radius::saturating((1.0 - fidelity.clamp(0.0, 1.0)).sqrt())
}

fn commutator_term(h: &ComplexMatrix, rho0: &ComplexMatrix) -> ComplexMatrix {
    commutator(h, rho0)
        .expect("spec operators share the state dimension")
        .scale(I)
}

fn adjoint_dissipator_sum(spec: &SystemSpec, rho0: &ComplexMatrix) -> ComplexMatrix {
    spec.lindblad_ops()
        .iter()
        .map(|m| adjoint_dissipator(m, rho0).expect("dimensions validated by SystemSpec"))
        .fold(ComplexMatrix::zeros(spec.dim()), |acc, d| &acc + &d)
}

/// `A = √2·‖i[H, ρ0] + Σ_k D†[M_k]ρ0‖_F` for a system without control.
pub fn coeff_a(spec: &SystemSpec) -> Result<f64, QslError> {
    if spec.control().is_some() {
        return Err(QslError::ControlPresent);
    }
    let rho0 = spec.rho0();
    let x = &commutator_term(spec.h_drift(), &rho0) + &adjoint_dissipator_sum(spec, &rho0);
    Ok(std::f64::consts::SQRT_2 * frobenius_norm(&x))
}

/// `A′ = √2·(‖i[H_d, ρ0]‖_F + u_max·‖i[H_c, ρ0]‖_F + ‖Σ_k D†[M_k]ρ0‖_F)`.
///
/// Valid for any control history with `|u(t)| ≤ u_max`.
pub fn coeff_a_controlled(spec: &SystemSpec) -> Result<f64, QslError> {
    let control = spec.control().ok_or(QslError::ControlMissing)?;
    let rho0 = spec.rho0();
    let drift = frobenius_norm(&commutator_term(spec.h_drift(), &rho0));
    let driven = control.u_max * frobenius_norm(&commutator_term(&control.hamiltonian, &rho0));
    let dissipative = frobenius_norm(&adjoint_dissipator_sum(spec, &rho0));
    Ok(std::f64::consts::SQRT_2 * (drift + driven + dissipative))
}

/// `E = Σ_k ‖M_k ψ0‖² − |⟨ψ0|M_k|ψ0⟩|²`, clamped at zero against roundoff.
pub fn coeff_e(psi0: &PureState, lindblad_ops: &[ComplexMatrix]) -> Result<f64, QslError> {
    let mut e = 0.0;
    for m in lindblad_ops {
        let mpsi = apply(m, psi0).map_err(DynamicsError::from)?;
        let mean = expectation(psi0, m).map_err(DynamicsError::from)?;
        e += vector_norm(&mpsi).powi(2) - mean.norm_sqr();
    }
    Ok(e.max(0.0))
}

/// Coefficients for `spec`, choosing the controlled form when a control
/// Hamiltonian is present.
pub fn coefficients(spec: &SystemSpec) -> Result<QslCoefficients, QslError> {
    let e = coeff_e(spec.psi0(), spec.lindblad_ops())?;
    Ok(match spec.control() {
        None => QslCoefficients::new(coeff_a(spec)?, e, CoeffSource::Generic),
        Some(_) => QslCoefficients::new(coeff_a_controlled(spec)?, e, CoeffSource::Controlled),
    })
}

/// `x − ln(1 + x)` without cancellation for small `x`.
fn x_minus_log1p(x: f64) -> f64 {
    if x.abs() < 1e-2 {
        // Σ_{k≥2} (−1)^k x^k / k; nine terms reach f64 precision here.
        let mut term = x * x;
        let mut sum = 0.0;
        for k in 2..=10 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * term / k as f64;
            term *= x;
        }
        sum
    } else {
        x - x.ln_1p()
    }
}

/// The evolution-time lower bound `T*` at radius `λ`.
///
/// Degenerate coefficients map to the analytic limits: `E → 0` gives
/// `2λ/A`, `A → 0` gives `λ²/E`, and `A = E = 0` (a frozen state) gives
/// `+∞` for any `λ > 0`.
pub fn qsl_time(coeffs: &QslCoefficients, r: Radius) -> f64 {
    let lambda = r.value();
    if lambda == 0.0 {
        return 0.0;
    }
    let (a, e) = (coeffs.a, coeffs.e);
    match (a < DEGENERATE_TOL, e < DEGENERATE_TOL) {
        (true, true) => f64::INFINITY,
        (true, false) => lambda * lambda / e,
        (false, true) => 2.0 * lambda / a,
        // 2λ/A − (2E/A²)·ln(1 + Aλ/E) = (2E/A²)·(x − ln(1 + x)), x = Aλ/E
        (false, false) => 2.0 * e / (a * a) * x_minus_log1p(a * lambda / e),
    }
}

/// Comparison bound `T_DC = √2·λ/A`.
pub fn del_campo_time(coeffs: &QslCoefficients, r: Radius) -> f64 {
    let lambda = r.value();
    if lambda == 0.0 {
        0.0
    } else if coeffs.a < DEGENERATE_TOL {
        f64::INFINITY
    } else {
        std::f64::consts::SQRT_2 * lambda / coeffs.a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tighter {
    TStar,
    DelCampo,
    Equal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundResult {
    pub t_star: f64,
    pub t_dc: f64,
}

impl BoundResult {
    pub fn evaluate(coeffs: &QslCoefficients, r: Radius) -> Self {
        Self {
            t_star: qsl_time(coeffs, r),
            t_dc: del_campo_time(coeffs, r),
        }
    }

    /// Which lower bound is larger (hence tighter).
    pub fn tighter(&self) -> Tighter {
        if self.t_star > self.t_dc {
            Tighter::TStar
        } else if self.t_star < self.t_dc {
            Tighter::DelCampo
        } else {
            Tighter::Equal
        }
    }
}

/// Largest `λ ∈ [0, 1]` with `T*(λ) ≤ T`.
///
/// `T*` is strictly increasing in `λ` whenever the state can move at all,
/// so bisection brackets the boundary; the returned value always satisfies
/// the bound.
pub fn lambda_max(coeffs: &QslCoefficients, t: f64) -> Radius {
    if !(t > 0.0) {
        return Radius::ZERO;
    }
    if qsl_time(coeffs, Radius::ONE) <= t {
        return Radius::ONE;
    }
    let (lo, _) = bisect_boundary(0.0, 1.0, LAMBDA_TOL, |lambda| {
        qsl_time(coeffs, Radius::saturating(lambda)) <= t
    });
    Radius::saturating(lo)
}

/// `√(⟨h²⟩ − ⟨h⟩²)` in the state `psi0`.
pub fn energy_std(psi0: &PureState, h: &ComplexMatrix) -> Result<f64, QslError> {
    let mean = expectation(psi0, h).map_err(DynamicsError::from)?.re;
    let hpsi = apply(h, psi0).map_err(DynamicsError::from)?;
    let second = vector_norm(&hpsi).powi(2);
    Ok((second - mean * mean).max(0.0).sqrt())
}

/// Closed-system radius bound `λ ≤ ΔH·T`; not clamped to 1.
pub fn closed_system_lambda_bound(psi0: &PureState, h: &ComplexMatrix, t: f64) -> Result<f64, QslError> {
    if h.hermiticity_defect() > crate::dynamics::HERMITIAN_TOL {
        return Err(DynamicsError::NotHermitian {
            which: "Hamiltonian",
            defect: h.hermiticity_defect(),
        }
        .into());
    }
    Ok(energy_std(psi0, h)? * t)
}

/// The `x = Aλ/E` at which `T*` and `T_DC` coincide: the positive root of
/// `1 − ln(1 + x)/x = 1/√2`. For larger `x` the bound `T*` is the tighter
/// one.
pub fn del_campo_crossover() -> f64 {
    bisect_root(1.0, 100.0, 1e-13, |x| 1.0 - x.ln_1p() / x - std::f64::consts::FRAC_1_SQRT_2)
        .expect("sign change on [1, 100]")
}

/// Convenience: `√2·‖i[h, |ψ⟩⟨ψ|]‖_F`, the commutator route to `2ΔH`.
pub fn commutator_speed(psi0: &PureState, h: &ComplexMatrix) -> f64 {
    std::f64::consts::SQRT_2 * frobenius_norm(&commutator_term(h, &outer(psi0)))
}

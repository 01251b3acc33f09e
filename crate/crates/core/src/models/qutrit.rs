// Copyright 2026 The qsl-reach Authors
// SPDX-License-Identifier: Apache-2.0

//! Spin-1 qutrit driven by `H_t = Ω Sx + u_t Sz`, with the real rotation
//! family `G(α, β, δ) = Rz(δ) Ry(β) Rx(α)`.

use std::f64::consts::{FRAC_PI_2, PI};

use super::{check_range, gate_radius, spin1, Axis, GateParams, ModelError};
use crate::dynamics::SystemSpec;
use crate::linalg::{real, ComplexMatrix, PureState};
use crate::qsl::{coefficients, qsl_time};

/// `[sin(θ/2)cos(φ/2), cos(θ/2), sin(θ/2)sin(φ/2)]ᵀ` for `θ, φ ∈ [0, π]`.
pub fn qutrit_state(theta: f64, varphi: f64) -> Result<PureState, ModelError> {
    check_range("theta", theta, 0.0, PI, "[0, pi]")?;
    check_range("varphi", varphi, 0.0, PI, "[0, pi]")?;
    let (st, ct) = (0.5 * theta).sin_cos();
    let (sp, cp) = (0.5 * varphi).sin_cos();
    Ok(PureState::new(vec![real(st * cp), real(ct), real(st * sp)])?)
}

/// `[1, 0, 1]ᵀ/√2`, i.e. `(θ, φ) = (π, π/2)`.
pub fn qutrit_example_state() -> PureState {
    qutrit_state(PI, FRAC_PI_2).expect("in range")
}

/// Drift `ΩSx`, control `Sz` bounded by `u_max`, no dissipation.
pub fn qutrit_spec(psi0: PureState, omega: f64, u_max: f64) -> Result<SystemSpec, ModelError> {
    check_range("omega", omega, 0.0, f64::MAX, "[0, inf)")?;
    check_range("u_max", u_max, 0.0, f64::MAX, "[0, inf)")?;
    Ok(SystemSpec::new(psi0, spin1(Axis::X).scale_real(omega), vec![])?.with_control(spin1(Axis::Z), u_max)?)
}

fn rx(a: f64) -> ComplexMatrix {
    let (s, c) = a.sin_cos();
    ComplexMatrix::from_real_rows(&[[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]).expect("3x3")
}

fn ry(b: f64) -> ComplexMatrix {
    let (s, c) = b.sin_cos();
    ComplexMatrix::from_real_rows(&[[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]]).expect("3x3")
}

fn rz(d: f64) -> ComplexMatrix {
    let (s, c) = d.sin_cos();
    ComplexMatrix::from_real_rows(&[[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]]).expect("3x3")
}

/// `G(α, β, δ) = Rz(δ) Ry(β) Rx(α)`.
pub fn so3_gate(g: &GateParams) -> ComplexMatrix {
    &(&rz(g.delta) * &ry(g.beta)) * &rx(g.alpha)
}

/// The closed-form overlap `¼(cosα cosβ + cosα sinβ + cosβ − sinβ)²` for
/// `ψ0 = [1, 0, 1]ᵀ/√2` and `δ = 0`.
///
/// This expression is the overlap produced by the product `Rx(α) Ry(β)`;
/// for the `Rz Ry Rx` ordering of [`so3_gate`] it only agrees when
/// `α ∈ {0, π}` or `β ∈ {0, π}`.
pub fn qutrit_printed_fidelity(alpha: f64, beta: f64) -> f64 {
    let ca = alpha.cos();
    let (sb, cb) = beta.sin_cos();
    0.25 * (ca * cb + ca * sb + cb - sb).powi(2)
}

/// `√(1 − cosΘ_T)/(Ω + u_max)` with the closed-form overlap.
pub fn qutrit_printed_qsl(omega: f64, u_max: f64, alpha: f64, beta: f64) -> Result<f64, ModelError> {
    let denom = omega + u_max;
    if !(denom > crate::qsl::DEGENERATE_TOL) {
        return Err(ModelError::ZeroDenominator);
    }
    Ok((1.0 - qutrit_printed_fidelity(alpha, beta)).max(0.0).sqrt() / denom)
}

/// Gate-time bound for the qutrit example state through the generic
/// pipeline: the radius reached by [`so3_gate`] (see [`gate_radius`]) and the controlled
/// coefficient `A′ = 2(Ω + u_max)`.
pub fn qutrit_gate_qsl(omega: f64, u_max: f64, g: &GateParams) -> Result<f64, ModelError> {
    let spec = qutrit_spec(qutrit_example_state(), omega, u_max)?;
    let coeffs = coefficients(&spec)?;
    if !(coeffs.a > crate::qsl::DEGENERATE_TOL) {
        return Err(ModelError::ZeroDenominator);
    }
    Ok(qsl_time(&coeffs, gate_radius(spec.psi0(), &so3_gate(g))?))
}

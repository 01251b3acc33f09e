// Copyright 2026 The qsl-reach Authors
// SPDX-License-Identifier: Apache-2.0

//! Single qubit: `H = Ωσz` with decay `M = √γ σ₋`, or the gate setting
//! `H_t = Ωσx + u_t σz` without dissipation.

use std::f64::consts::PI;

use serde::Serialize;

use super::{check_range, gate_radius, pauli, sigma_minus, Axis, ModelError};
use crate::dynamics::SystemSpec;
use crate::linalg::{c, real, ComplexMatrix, PureState};
use crate::qsl::{coefficients, qsl_time, CoeffSource, QslCoefficients};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QubitParams {
    pub theta: f64,
    pub phi: f64,
    pub omega: f64,
    pub gamma: f64,
    pub u_max: f64,
}

impl Default for QubitParams {
    fn default() -> Self {
        Self {
            theta: 0.0,
            phi: 0.0,
            omega: 1.0,
            gamma: 0.0,
            u_max: 1.0,
        }
    }
}

impl QubitParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        check_range("theta", self.theta, 0.0, PI, "[0, pi]")?;
        check_range("phi", self.phi, 0.0, PI, "[0, pi]")?;
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return Err(ModelError::OutOfRange {
                name: "omega",
                value: self.omega,
                range: "(0, inf)",
            });
        }
        check_range("gamma", self.gamma, 0.0, f64::MAX, "[0, inf)")?;
        check_range("u_max", self.u_max, 0.0, f64::MAX, "[0, inf)")
    }
}

/// Euler angles of `G(α, β, δ)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct GateParams {
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
}

impl GateParams {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta, delta: 0.0 }
    }

    /// Qubit ranges. The endpoints `α = 2π` and `β = π` are admitted so the
    /// gates `G(2π, π)` and `G(0, π)` can be addressed.
    pub fn validate_qubit(&self) -> Result<(), ModelError> {
        check_range("alpha", self.alpha, 0.0, 2.0 * PI, "[0, 2pi]")?;
        check_range("beta", self.beta, 0.0, PI, "[0, pi]")?;
        check_range("delta", self.delta, 0.0, 4.0 * PI, "[0, 4pi]")
    }

    pub fn validate_qutrit(&self) -> Result<(), ModelError> {
        check_range("alpha", self.alpha, 0.0, 2.0 * PI, "[0, 2pi]")?;
        check_range("beta", self.beta, 0.0, PI, "[0, pi]")?;
        check_range("delta", self.delta, 0.0, 2.0 * PI, "[0, 2pi]")
    }
}

/// `|ψ0⟩ = [cosθ, e^{iφ} sinθ]ᵀ`.
pub fn qubit_state(p: &QubitParams) -> Result<PureState, ModelError> {
    check_range("theta", p.theta, 0.0, PI, "[0, pi]")?;
    check_range("phi", p.phi, 0.0, PI, "[0, pi]")?;
    let (s, co) = p.theta.sin_cos();
    Ok(PureState::new(vec![real(co), c(p.phi.cos() * s, p.phi.sin() * s)])?)
}

/// Without control: `H = Ωσz`, `M = √γ σ₋`. With control: drift `Ωσx`,
/// control `σz` bounded by `u_max`, and no dissipation.
pub fn qubit_spec(p: &QubitParams, with_control: bool) -> Result<SystemSpec, ModelError> {
    p.validate()?;
    let psi0 = qubit_state(p)?;
    let spec = if with_control {
        SystemSpec::new(psi0, pauli(Axis::X).scale_real(p.omega), vec![])?.with_control(pauli(Axis::Z), p.u_max)?
    } else {
        let ops = if p.gamma > 0.0 {
            vec![sigma_minus().scale_real(p.gamma.sqrt())]
        } else {
            vec![]
        };
        SystemSpec::new(psi0, pauli(Axis::Z).scale_real(p.omega), ops)?
    };
    Ok(spec)
}

/// Closed forms for the damped qubit (any `φ`):
/// `A = √(2γ²cos²2θ + (4Ω² + γ²/4) sin²2θ)`, `E = γ cos⁴θ`.
pub fn qubit_closed_form_coeffs(p: &QubitParams) -> QslCoefficients {
    let (s2, c2) = (2.0 * p.theta).sin_cos();
    let g = p.gamma;
    let a = (2.0 * g * g * c2 * c2 + (4.0 * p.omega * p.omega + 0.25 * g * g) * s2 * s2).sqrt();
    let e = g * p.theta.cos().powi(4);
    QslCoefficients::new(a, e, CoeffSource::ClosedForm)
}

pub fn rz(angle: f64) -> ComplexMatrix {
    let (s, co) = (0.5 * angle).sin_cos();
    ComplexMatrix::diagonal(&[c(co, -s), c(co, s)])
}

pub fn ry(angle: f64) -> ComplexMatrix {
    let (s, co) = (0.5 * angle).sin_cos();
    ComplexMatrix::from_real_rows(&[[co, -s], [s, co]]).expect("constant 2x2")
}

/// `G(α, β, δ) = Rz(α) Ry(β) Rz(δ)`.
pub fn su2_gate(g: &GateParams) -> ComplexMatrix {
    &(&rz(g.alpha) * &ry(g.beta)) * &rz(g.delta)
}

/// Closed-form gate-time bound for `ψ0 = [cosθ, sinθ]ᵀ` under
/// `H_t = Ωσx + u_t σz`:
///
/// ```text
/// T* = √(1 − cos²(α/2)cos²(β/2) − sin²(α/2)cos²(2θ + β/2)) / (Ω|cos2θ| + u_max|sin2θ|)
/// ```
pub fn qubit_gate_qsl(p: &QubitParams, g: &GateParams) -> Result<f64, ModelError> {
    p.validate()?;
    if p.phi != 0.0 {
        return Err(ModelError::NonzeroPhase(p.phi));
    }
    let denom = p.omega * (2.0 * p.theta).cos().abs() + p.u_max * (2.0 * p.theta).sin().abs();
    if !(denom > crate::qsl::DEGENERATE_TOL) {
        return Err(ModelError::ZeroDenominator);
    }
    let (sa, ca) = (0.5 * g.alpha).sin_cos();
    let sb = (0.5 * g.beta).sin();
    let sm = (2.0 * p.theta + 0.5 * g.beta).sin();
    // 1 − ca²cb² − sa²cm², rewritten with ca² + sa² = 1 to avoid cancellation.
    let radicand = ca * ca * sb * sb + sa * sa * sm * sm;
    Ok(radicand.sqrt() / denom)
}

/// Same bound through the generic pipeline: `λ` from the gate fidelity and
/// `A′` from the controlled coefficient. Accepts any `φ`.
pub fn qubit_gate_qsl_generic(p: &QubitParams, g: &GateParams) -> Result<f64, ModelError> {
    let spec = qubit_spec(p, true)?;
    let coeffs = coefficients(&spec)?;
    Ok(qsl_time(&coeffs, gate_radius(spec.psi0(), &su2_gate(g))?))
}

// Copyright 2026 The qsl-reach Authors
// SPDX-License-Identifier: Apache-2.0

//! Concrete systems: a driven/damped qubit, Bell pairs under collective
//! decay, and a spin-1 qutrit, with their rotation-gate families.
//!
//! Every closed-form bound here has a generic counterpart computed from
//! [`crate::qsl`]; the generic route is the one used by sweeps.

use std::f64::consts::FRAC_1_SQRT_2;
use std::str::FromStr;

use thiserror::Error;

use crate::dynamics::DynamicsError;
use crate::linalg::{apply, c, expectation, real, vector_norm, ComplexMatrix, LinalgError, PureState};
use crate::qsl::{QslError, Radius};

pub mod bell;
pub mod qubit;
pub mod qutrit;

pub use bell::{bell_coefficients, bell_printed_qsl, bell_qsl, bell_spec, bell_state, collective_decay, BellLabel, BellState};
pub use qubit::{
    qubit_closed_form_coeffs, qubit_gate_qsl, qubit_gate_qsl_generic, qubit_spec, qubit_state, su2_gate, GateParams,
    QubitParams,
};
pub use qutrit::{
    qutrit_example_state, qutrit_gate_qsl, qutrit_printed_fidelity, qutrit_printed_qsl, qutrit_spec, qutrit_state,
    so3_gate,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("{name} = {value} outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("unknown axis {0:?} (expected x, y or z)")]
    InvalidAxis(String),
    #[error("unknown Bell state {0:?}")]
    InvalidBellLabel(String),
    #[error("closed-form gate bound assumes phi = 0, got {0}")]
    NonzeroPhase(f64),
    #[error("gate bound denominator vanishes (omega and u_max terms are both zero)")]
    ZeroDenominator,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Qsl(#[from] QslError),
}

pub(crate) fn check_range(
    name: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    range: &'static str,
) -> Result<(), ModelError> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(())
    } else {
        Err(ModelError::OutOfRange { name, value, range })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl FromStr for Axis {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            _ => Err(ModelError::InvalidAxis(s.to_string())),
        }
    }
}

/// Pauli matrices in the basis `|0⟩ = [1, 0]ᵀ`, `|1⟩ = [0, 1]ᵀ`.
pub fn pauli(axis: Axis) -> ComplexMatrix {
    let z = real(0.0);
    let rows = match axis {
        Axis::X => [[z, real(1.0)], [real(1.0), z]],
        Axis::Y => [[z, c(0.0, -1.0)], [c(0.0, 1.0), z]],
        Axis::Z => [[real(1.0), z], [z, real(-1.0)]],
    };
    ComplexMatrix::from_rows(&rows).expect("constant 2x2")
}

/// `σ₋ = |1⟩⟨0|`, the decay from `|0⟩` (excited) to `|1⟩` (ground).
pub fn sigma_minus() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[0.0, 0.0], [1.0, 0.0]]).expect("constant 2x2")
}

/// Spin-1 operators in the basis `|E⟩, |S⟩, |G⟩` (indices 0, 1, 2).
///
/// `Sx = (|S⟩⟨E| + |G⟩⟨S|)/√2 + h.c.`, `Sy = i(|S⟩⟨E| + |G⟩⟨S|)/√2 + h.c.`,
/// `Sz = |E⟩⟨E| − |G⟩⟨G|`.
pub fn spin1(axis: Axis) -> ComplexMatrix {
    let z = real(0.0);
    let s = FRAC_1_SQRT_2;
    let rows = match axis {
        Axis::X => [[z, real(s), z], [real(s), z, real(s)], [z, real(s), z]],
        Axis::Y => [[z, c(0.0, -s), z], [c(0.0, s), z, c(0.0, -s)], [z, c(0.0, s), z]],
        Axis::Z => [[real(1.0), z, z], [z, z, z], [z, z, real(-1.0)]],
    };
    ComplexMatrix::from_rows(&rows).expect("constant 3x3")
}

/// `cosΘ_T = |⟨ψ0|G|ψ0⟩|²`, the overlap of `G|ψ0⟩` with `|ψ0⟩`.
pub fn gate_fidelity(psi0: &PureState, g: &ComplexMatrix) -> Result<f64, ModelError> {
    Ok(expectation(psi0, g)?.norm_sqr().clamp(0.0, 1.0))
}

/// `λ = √(1 − |⟨ψ0|G|ψ0⟩|²)` for unitary `G`, evaluated as the norm of the
/// component of `G|ψ0⟩` orthogonal to `|ψ0⟩`. Unlike `1 − fidelity` this
/// keeps full accuracy for gates close to the identity.
pub fn gate_radius(psi0: &PureState, g: &ComplexMatrix) -> Result<Radius, ModelError> {
    let moved = apply(g, psi0)?;
    let overlap = psi0.inner(&moved)?;
    let residual: Vec<_> = moved
        .iter()
        .zip(psi0.amplitudes())
        .map(|(m, p)| m - overlap * p)
        .collect();
    Ok(Radius::saturating(vector_norm(&residual)))
}

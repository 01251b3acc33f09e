// Copyright 2026 The qsl-reach Authors
// SPDX-License-Identifier: Apache-2.0

//! Bell pairs under collective decay `M = √γ(σ₋⊗I + I⊗σ₋)` with `H = 0`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{sigma_minus, ModelError};
use crate::dynamics::SystemSpec;
use crate::linalg::{kron, real, ComplexMatrix, PureState};
use crate::qsl::{coefficients, qsl_time, QslCoefficients, Radius};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BellLabel {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus];

    pub fn as_str(self) -> &'static str {
        match self {
            BellLabel::PhiPlus => "phi-plus",
            BellLabel::PhiMinus => "phi-minus",
            BellLabel::PsiPlus => "psi-plus",
            BellLabel::PsiMinus => "psi-minus",
        }
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BellLabel {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "phi-plus" | "phi+" | "phiplus" => Ok(BellLabel::PhiPlus),
            "phi-minus" | "phi-" | "phiminus" => Ok(BellLabel::PhiMinus),
            "psi-plus" | "psi+" | "psiplus" => Ok(BellLabel::PsiPlus),
            "psi-minus" | "psi-" | "psiminus" => Ok(BellLabel::PsiMinus),
            _ => Err(ModelError::InvalidBellLabel(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BellState {
    pub label: BellLabel,
    pub vector: PureState,
}

impl BellState {
    /// Purity `Tr(ρ_A²)` of the first qubit's reduced state.
    pub fn reduced_purity(&self) -> f64 {
        let a = self.vector.amplitudes();
        // ρ_A[i][j] = Σ_k ψ[2i+k] ψ*[2j+k]
        let mut purity = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let entry: crate::linalg::Complex = (0..2).map(|k| a[2 * i + k] * a[2 * j + k].conj()).sum();
                purity += entry.norm_sqr();
            }
        }
        purity
    }
}

/// Basis order `|00⟩, |01⟩, |10⟩, |11⟩` with `|ab⟩ = |a⟩⊗|b⟩`.
pub fn bell_state(label: BellLabel) -> BellState {
    let s = FRAC_1_SQRT_2;
    let amps = match label {
        BellLabel::PhiPlus => [s, 0.0, 0.0, s],
        BellLabel::PhiMinus => [s, 0.0, 0.0, -s],
        BellLabel::PsiPlus => [0.0, s, s, 0.0],
        // (|10⟩ − |01⟩)/√2
        BellLabel::PsiMinus => [0.0, -s, s, 0.0],
    };
    BellState {
        label,
        vector: PureState::new(amps.iter().map(|&x| real(x)).collect()).expect("normalized constant"),
    }
}

/// `√γ(σ₋⊗I + I⊗σ₋)`.
pub fn collective_decay(gamma: f64) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2);
    let sm = sigma_minus();
    (&kron(&sm, &id) + &kron(&id, &sm)).scale_real(gamma.max(0.0).sqrt())
}

pub fn bell_spec(label: BellLabel, gamma: f64) -> Result<SystemSpec, ModelError> {
    super::check_range("gamma", gamma, 0.0, f64::MAX, "[0, inf)")?;
    Ok(SystemSpec::new(
        bell_state(label).vector,
        ComplexMatrix::zeros(4),
        vec![collective_decay(gamma)],
    )?)
}

pub fn bell_coefficients(label: BellLabel, gamma: f64) -> Result<QslCoefficients, ModelError> {
    Ok(coefficients(&bell_spec(label, gamma)?)?)
}

/// `T*` for a Bell pair via the generic coefficients. `Ψ⁻` is a dark state
/// of the collective decay and never moves.
pub fn bell_qsl(label: BellLabel, gamma: f64, r: Radius) -> Result<f64, ModelError> {
    Ok(qsl_time(&bell_coefficients(label, gamma)?, r))
}

/// The closed forms as commonly printed:
/// `T*(Φ±) = 2λ/(√5γ) − (2/(5γ))ln(1+λ)`, `T*(Ψ⁺) = λ/(2γ) − (1/(4γ))ln(1+2λ)`.
///
/// The `Φ±` log argument differs from what the generic coefficients give
/// (`ln(1 + √5λ)`); kept for comparison only.
pub fn bell_printed_qsl(label: BellLabel, gamma: f64, r: Radius) -> f64 {
    let l = r.value();
    if l == 0.0 {
        return 0.0;
    }
    match label {
        BellLabel::PhiPlus | BellLabel::PhiMinus => {
            2.0 * l / (5f64.sqrt() * gamma) - 2.0 / (5.0 * gamma) * l.ln_1p()
        }
        BellLabel::PsiPlus => l / (2.0 * gamma) - (2.0 * l).ln_1p() / (4.0 * gamma),
        BellLabel::PsiMinus => f64::INFINITY,
    }
}

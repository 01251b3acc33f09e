// Copyright 2026 The qsl-reach Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::{validate_horizons, AxisSpec, Coord, ReachError, ReachRecord, SweepGrid};
use crate::models::{
    bell_coefficients, qubit_gate_qsl, qubit_spec, qutrit_example_state, qutrit_gate_qsl, qutrit_spec, BellLabel,
    GateParams, QubitParams,
};
use crate::qsl::{coefficients, lambda_max, qsl_time, QslCoefficients, Radius};

fn horizon_columns(coeffs: &QslCoefficients, t_star: f64, horizons: &[f64]) -> (Vec<f64>, Vec<bool>) {
    let lambdas = horizons.iter().map(|&t| lambda_max(coeffs, t).value()).collect();
    let reach = horizons.iter().map(|&t| t_star <= t).collect();
    (lambdas, reach)
}

/// Largest reachable radius as a function of the initial-state angle `θ`
/// for the damped qubit `H = Ωσz`, `M = √γσ₋`. The grid's single axis is
/// `θ`; all other parameters come from `base`.
pub fn sweep_lambda_vs_theta(base: &QubitParams, grid: &SweepGrid) -> Result<Vec<ReachRecord>, ReachError> {
    grid.validate()?;
    let [axis] = grid.axes.as_slice() else {
        return Err(ReachError::InvalidGrid("lambda sweep takes a single theta axis".into()));
    };
    if axis.start < 0.0 || axis.stop > PI {
        return Err(ReachError::InvalidGrid("theta axis must lie in [0, pi]".into()));
    }
    (0..axis.count)
        .into_par_iter()
        .map(|i| {
            let p = QubitParams {
                theta: axis.value(i),
                ..*base
            };
            let coeffs = coefficients(&qubit_spec(&p, false)?)?;
            let t_star = qsl_time(&coeffs, Radius::ONE);
            let (lambda_max, reachable) = horizon_columns(&coeffs, t_star, &grid.horizons);
            Ok(ReachRecord {
                label: "qubit".into(),
                coords: vec![
                    Coord { name: "theta", value: p.theta },
                    Coord { name: "gamma", value: p.gamma },
                    Coord { name: "omega", value: p.omega },
                ],
                t_star,
                horizons: grid.horizons.clone(),
                lambda_max,
                reachable,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GateModel {
    Qubit,
    Qutrit,
}

impl GateModel {
    pub fn as_str(self) -> &'static str {
        match self {
            GateModel::Qubit => "qubit",
            GateModel::Qutrit => "qutrit",
        }
    }
}

/// Parameters held fixed across a gate map. `theta` is only used by the
/// qubit model; the qutrit map always starts from `[1, 0, 1]ᵀ/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GateMapFixed {
    pub theta: f64,
    pub omega: f64,
    pub u_max: f64,
}

impl Default for GateMapFixed {
    fn default() -> Self {
        Self {
            theta: 0.0,
            omega: 1.0,
            u_max: 1.0,
        }
    }
}

/// Gate-time bound over an `(α, β)` grid (`δ = 0`). Axis 0 is `α`, axis 1
/// is `β`; records are ordered with `β` varying fastest.
pub fn gate_reach_map(model: GateModel, fixed: &GateMapFixed, grid: &SweepGrid) -> Result<Vec<ReachRecord>, ReachError> {
    grid.validate()?;
    let [alpha_axis, beta_axis] = grid.axes.as_slice() else {
        return Err(ReachError::InvalidGrid("gate map takes alpha and beta axes".into()));
    };
    let (spec, theta) = match model {
        GateModel::Qubit => {
            let p = QubitParams {
                theta: fixed.theta,
                omega: fixed.omega,
                u_max: fixed.u_max,
                ..Default::default()
            };
            (qubit_spec(&p, true)?, fixed.theta)
        }
        GateModel::Qutrit => (qutrit_spec(qutrit_example_state(), fixed.omega, fixed.u_max)?, PI),
    };
    let coeffs = coefficients(&spec)?;
    let n_beta = beta_axis.count;
    (0..alpha_axis.count * n_beta)
        .into_par_iter()
        .map(|idx| {
            let g = GateParams::new(alpha_axis.value(idx / n_beta), beta_axis.value(idx % n_beta));
            let t_star = match model {
                GateModel::Qubit => {
                    let p = QubitParams {
                        theta: fixed.theta,
                        omega: fixed.omega,
                        u_max: fixed.u_max,
                        ..Default::default()
                    };
                    qubit_gate_qsl(&p, &g)?
                }
                GateModel::Qutrit => qutrit_gate_qsl(fixed.omega, fixed.u_max, &g)?,
            };
            let (lambda_max, reachable) = horizon_columns(&coeffs, t_star, &grid.horizons);
            Ok(ReachRecord {
                label: model.as_str().into(),
                coords: vec![
                    Coord { name: "theta", value: theta },
                    Coord { name: "alpha", value: g.alpha },
                    Coord { name: "beta", value: g.beta },
                ],
                t_star,
                horizons: grid.horizons.clone(),
                lambda_max,
                reachable,
            })
        })
        .collect()
}

/// Largest reachable radius versus decay rate `γ` at a fixed horizon, for
/// each Bell state. Records are grouped by state, then ordered by `γ`.
pub fn bell_sweep(gamma_axis: &AxisSpec, t: f64) -> Result<Vec<ReachRecord>, ReachError> {
    gamma_axis.validate()?;
    validate_horizons(&[t])?;
    if !(gamma_axis.start > 0.0) {
        return Err(ReachError::InvalidGrid("gamma axis must be strictly positive".into()));
    }
    let n = gamma_axis.count;
    (0..BellLabel::ALL.len() * n)
        .into_par_iter()
        .map(|idx| {
            let label = BellLabel::ALL[idx / n];
            let gamma = gamma_axis.value(idx % n);
            let coeffs = bell_coefficients(label, gamma)?;
            let t_star = qsl_time(&coeffs, Radius::ONE);
            let (lambda_max, reachable) = horizon_columns(&coeffs, t_star, &[t]);
            Ok(ReachRecord {
                label: label.as_str().into(),
                coords: vec![Coord { name: "gamma", value: gamma }],
                t_star,
                horizons: vec![t],
                lambda_max,
                reachable,
            })
        })
        .collect()
}

// Copyright 2026 The qsl-reach Authors
// SPDX-License-Identifier: Apache-2.0

//! Reachable-set sweeps and the randomized bound-validity harness.
//!
//! Grid points are evaluated in parallel; output order always follows grid
//! index order so datasets are reproducible byte for byte.

use serde::Serialize;
use thiserror::Error;

use crate::dynamics::DynamicsError;
use crate::models::ModelError;
use crate::qsl::QslError;

mod csv;
mod sweep;
mod verify;

pub use csv::{write_bell_sweep_csv, write_gate_map_csv, write_lambda_sweep_csv, write_verify_csv};
pub use sweep::{bell_sweep, gate_reach_map, sweep_lambda_vs_theta, GateMapFixed, GateModel};
pub use verify::{
    check_bound, random_system, trial_seed, BoundCheck, verify_bound, verify_trial, VerifyRecord, MARGIN_TOL, RANDOM_SYSTEM_DISTRIBUTION,
};

/// Default horizons `T` for reachable-set maps.
pub const DEFAULT_HORIZONS: [f64; 3] = [0.3, 0.5, 0.8];
pub const DEFAULT_1D_POINTS: usize = 200;
pub const DEFAULT_2D_POINTS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReachError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Qsl(#[from] QslError),
}

/// One sampled axis: `count` evenly spaced points from `start` to `stop`
/// inclusive.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxisSpec {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl AxisSpec {
    pub fn new(name: impl Into<String>, start: f64, stop: f64, count: usize) -> Self {
        Self {
            name: name.into(),
            start,
            stop,
            count,
        }
    }

    pub fn validate(&self) -> Result<(), ReachError> {
        if self.count < 2 {
            return Err(ReachError::InvalidGrid(format!("axis {} needs at least 2 points", self.name)));
        }
        if !(self.start < self.stop) || !self.start.is_finite() || !self.stop.is_finite() {
            return Err(ReachError::InvalidGrid(format!(
                "axis {} needs start < stop (got {} .. {})",
                self.name, self.start, self.stop
            )));
        }
        Ok(())
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            self.stop
        } else {
            self.start + (self.stop - self.start) * i as f64 / (self.count - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }
}

/// One- or two-dimensional grid plus the horizons evaluated at each point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepGrid {
    pub axes: Vec<AxisSpec>,
    pub horizons: Vec<f64>,
}

impl SweepGrid {
    pub fn new(axes: Vec<AxisSpec>, horizons: Vec<f64>) -> Self {
        Self { axes, horizons }
    }

    pub fn validate(&self) -> Result<(), ReachError> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(ReachError::InvalidGrid("grid must have one or two axes".into()));
        }
        for axis in &self.axes {
            axis.validate()?;
        }
        validate_horizons(&self.horizons)
    }
}

pub fn validate_horizons(horizons: &[f64]) -> Result<(), ReachError> {
    if horizons.is_empty() {
        return Err(ReachError::InvalidGrid("at least one horizon required".into()));
    }
    if horizons.iter().any(|&t| !(t > 0.0) || !t.is_finite()) {
        return Err(ReachError::InvalidGrid("horizons must be positive".into()));
    }
    if horizons.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(ReachError::InvalidGrid("horizons must be strictly increasing".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coord {
    pub name: &'static str,
    pub value: f64,
}

/// One grid point of a reachable-set map.
///
/// `t_star` is the bound for the point's target: the gate for gate maps,
/// the orthogonal radius `λ = 1` for radius sweeps. `reachable[i]` is
/// `t_star ≤ horizons[i]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReachRecord {
    pub label: String,
    pub coords: Vec<Coord>,
    pub t_star: f64,
    pub horizons: Vec<f64>,
    pub lambda_max: Vec<f64>,
    pub reachable: Vec<bool>,
}

impl ReachRecord {
    pub fn coord(&self, name: &str) -> Option<f64> {
        self.coords.iter().find(|c| c.name == name).map(|c| c.value)
    }

    /// Once reachable, reachable at every later horizon.
    pub fn is_monotone(&self) -> bool {
        self.reachable.windows(2).all(|w| !w[0] || w[1]) && self.lambda_max.windows(2).all(|w| w[0] <= w[1])
    }
}

// Copyright 2026 The qsl-reach Authors
// SPDX-License-Identifier: Apache-2.0

//! Quantum speed limits for Markovian open quantum systems.
//!
//! The crate evaluates an explicitly computable lower bound `T*` on the
//! time a pure state needs to move a distance `λ = √(1 − cosΘ)` under a
//! Lindblad master equation, inverts it into reachable radii, and checks
//! every bound against direct RK4 simulation.
//!
//! - [`linalg`]: dense complex matrices and pure states
//! - [`dynamics`]: master equation, integrator, relative purity angle
//! - [`qsl`]: coefficients `A`, `E`, the bound and its inversion
//! - [`models`]: qubit, Bell-pair and qutrit systems with their gate families
//! - [`reachset`]: reachable-set sweeps, CSV datasets and randomized verification

pub mod dynamics;
pub mod format;
pub mod linalg;
pub mod models;
pub mod qsl;
pub mod reachset;
mod roots;

pub use dynamics::{integrate, ControlSignal, DynamicsError, SystemSpec, Trajectory};
pub use linalg::{Complex, ComplexMatrix, PureState};
pub use qsl::{lambda_max, qsl_time, QslCoefficients, QslError, Radius};

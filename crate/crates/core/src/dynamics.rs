// Copyright 2026 The qsl-reach Authors
// SPDX-License-Identifier: Apache-2.0

//! Lindblad master-equation integration and the relative purity angle.
//!
//! The generator is
//!
//! ```text
//! dρ/dt = −i[H(t), ρ] + Σ_k (M_k ρ M_k† − ½ M_k†M_k ρ − ½ ρ M_k†M_k)
//! ```
//!
//! with `H(t) = H_drift + u(t)·H_control`. Trajectories are produced by
//! fixed-step classical RK4 starting from the pure projector `|ψ0⟩⟨ψ0|`.
//! Hermiticity, trace and positivity are checked (never enforced) after
//! every step.

use std::io::{self, Write};
use std::sync::Arc;

use thiserror::Error;

use crate::format::fmt_sig;
use crate::linalg::{dagger, outer, trace, ComplexMatrix, LinalgError, PureState, I};
use crate::qsl::QslCoefficients;

pub const DEFAULT_DT: f64 = 1e-3;
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Per-state Hermiticity tolerance along a trajectory.
pub const TRAJECTORY_HERMITIAN_TOL: f64 = 1e-9;
/// Base trace tolerance; grows linearly with the number of steps taken.
pub const TRACE_TOL: f64 = 1e-9;
pub const POSITIVITY_TOL: f64 = 1e-8;
/// Rate-check samples with `sin Θ` below this are discarded.
pub const RATE_SIN_CUTOFF: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{which} is not Hermitian (defect {defect:e})")]
    NotHermitian { which: &'static str, defect: f64 },
    #[error("u_max must be finite and non-negative, got {0}")]
    InvalidUMax(f64),
    #[error("control value supplied but the system has no control Hamiltonian")]
    NoControlHamiltonian,
    #[error("control value {u} at t = {time} exceeds u_max = {u_max}")]
    ControlOutOfRange { time: f64, u: f64, u_max: f64 },
    #[error("invalid time grid: T = {t_final}, dt = {dt}")]
    InvalidTimeGrid { t_final: f64, dt: f64 },
    #[error("integration failed at t = {time}: {reason}")]
    IntegrationFailure { time: f64, reason: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Control {
    pub hamiltonian: ComplexMatrix,
    pub u_max: f64,
}

/// Initial state, Hamiltonians and Lindblad operators of one open system.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSpec {
    psi0: PureState,
    h_drift: ComplexMatrix,
    control: Option<Control>,
    lindblad_ops: Vec<ComplexMatrix>,
}

fn check_hermitian(which: &'static str, m: &ComplexMatrix) -> Result<(), DynamicsError> {
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(DynamicsError::NotHermitian { which, defect });
    }
    Ok(())
}

fn check_dim(expected: usize, got: usize) -> Result<(), DynamicsError> {
    if expected != got {
        return Err(LinalgError::DimensionMismatch { left: expected, right: got }.into());
    }
    Ok(())
}

impl SystemSpec {
    pub fn new(
        psi0: PureState,
        h_drift: ComplexMatrix,
        lindblad_ops: Vec<ComplexMatrix>,
    ) -> Result<Self, DynamicsError> {
        let dim = psi0.dim();
        check_dim(dim, h_drift.dim())?;
        check_hermitian("drift Hamiltonian", &h_drift)?;
        for m in &lindblad_ops {
            check_dim(dim, m.dim())?;
        }
        Ok(Self {
            psi0,
            h_drift,
            control: None,
            lindblad_ops,
        })
    }

    /// Adds a control Hamiltonian driven by `u(t)` with `|u(t)| ≤ u_max`.
    pub fn with_control(mut self, h_control: ComplexMatrix, u_max: f64) -> Result<Self, DynamicsError> {
        check_dim(self.dim(), h_control.dim())?;
        check_hermitian("control Hamiltonian", &h_control)?;
        if !(u_max >= 0.0) || !u_max.is_finite() {
            return Err(DynamicsError::InvalidUMax(u_max));
        }
        self.control = Some(Control {
            hamiltonian: h_control,
            u_max,
        });
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.psi0.dim()
    }

    pub fn psi0(&self) -> &PureState {
        &self.psi0
    }

    pub fn h_drift(&self) -> &ComplexMatrix {
        &self.h_drift
    }

    pub fn control(&self) -> Option<&Control> {
        self.control.as_ref()
    }

    pub fn lindblad_ops(&self) -> &[ComplexMatrix] {
        &self.lindblad_ops
    }

    pub fn rho0(&self) -> ComplexMatrix {
        outer(&self.psi0)
    }
}

/// Time-dependent control amplitude `u(t)`.
#[derive(Clone)]
pub struct ControlSignal {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl ControlSignal {
    pub fn constant(u: f64) -> Self {
        Self::from_fn(move |_| u)
    }

    pub fn from_fn(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { f: Arc::new(f) }
    }

    pub fn value(&self, t: f64) -> f64 {
        (self.f)(t)
    }
}

impl std::fmt::Debug for ControlSignal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("ControlSignal(..)")
    }
}

/// `D[M]ρ = MρM† − ½M†Mρ − ½ρM†M`.
pub fn dissipator(m: &ComplexMatrix, rho: &ComplexMatrix) -> Result<ComplexMatrix, DynamicsError> {
    check_dim(m.dim(), rho.dim())?;
    let md = dagger(m);
    let mdm = &md * m;
    let sandwich = &(m * rho) * &md;
    let anti = &(&mdm * rho) + &(rho * &mdm);
    Ok(&sandwich - &anti.scale_real(0.5))
}

/// `D†[M]ρ = M†ρM − ½M†Mρ − ½ρM†M`.
pub fn adjoint_dissipator(m: &ComplexMatrix, rho: &ComplexMatrix) -> Result<ComplexMatrix, DynamicsError> {
    check_dim(m.dim(), rho.dim())?;
    let md = dagger(m);
    let mdm = &md * m;
    let sandwich = &(&md * rho) * m;
    let anti = &(&mdm * rho) + &(rho * &mdm);
    Ok(&sandwich - &anti.scale_real(0.5))
}

/// Precomputed pieces of the Lindblad generator.
struct Generator {
    h_drift: ComplexMatrix,
    h_control: Option<ComplexMatrix>,
    jumps: Vec<(ComplexMatrix, ComplexMatrix, ComplexMatrix)>,
}

impl Generator {
    fn new(spec: &SystemSpec) -> Self {
        let jumps = spec
            .lindblad_ops
            .iter()
            .map(|m| {
                let md = dagger(m);
                let mdm = &md * m;
                (m.clone(), md, mdm.scale_real(0.5))
            })
            .collect();
        Self {
            h_drift: spec.h_drift.clone(),
            h_control: spec.control.as_ref().map(|c| c.hamiltonian.clone()),
            jumps,
        }
    }

    fn apply(&self, u: f64, rho: &ComplexMatrix) -> ComplexMatrix {
        let h = match &self.h_control {
            Some(hc) if u != 0.0 => &self.h_drift + &hc.scale_real(u),
            _ => self.h_drift.clone(),
        };
        let mut out = (&(&h * rho) - &(rho * &h)).scale(-I);
        for (m, md, half_mdm) in &self.jumps {
            let sandwich = &(m * rho) * md;
            let anti = &(half_mdm * rho) + &(rho * half_mdm);
            out = &out + &(&sandwich - &anti);
        }
        out
    }
}

/// Right-hand side of the master equation at control value `u`.
///
/// `u` must be `None` for systems without a control Hamiltonian.
pub fn master_rhs(spec: &SystemSpec, u: Option<f64>, rho: &ComplexMatrix) -> Result<ComplexMatrix, DynamicsError> {
    check_dim(spec.dim(), rho.dim())?;
    let u = match (u, spec.control.as_ref()) {
        (None, _) => 0.0,
        (Some(_), None) => return Err(DynamicsError::NoControlHamiltonian),
        (Some(u), Some(c)) => {
            if u.abs() > c.u_max {
                return Err(DynamicsError::ControlOutOfRange {
                    time: 0.0,
                    u,
                    u_max: c.u_max,
                });
            }
            u
        }
    };
    Ok(Generator::new(spec).apply(u, rho))
}

/// `⟨ψ0|ρ|ψ0⟩`, real part.
pub fn fidelity(psi0: &PureState, rho: &ComplexMatrix) -> f64 {
    crate::linalg::expectation(psi0, rho)
        .expect("state and density matrix dimensions agree")
        .re
}

/// `Θ = arccos⟨ψ0|ρ|ψ0⟩ ∈ [0, π/2]`; the overlap is clamped to `[0, 1]`.
pub fn relative_purity(psi0: &PureState, rho: &ComplexMatrix) -> f64 {
    fidelity(psi0, rho).clamp(0.0, 1.0).acos()
}

/// Sampled solution of the master equation.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<ComplexMatrix>,
    pub thetas: Vec<f64>,
    pub fidelities: Vec<f64>,
    pub trace_errors: Vec<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory has at least one sample")
    }

    pub fn final_state(&self) -> &ComplexMatrix {
        self.states.last().expect("trajectory has at least one sample")
    }

    pub fn final_theta(&self) -> f64 {
        *self.thetas.last().expect("trajectory has at least one sample")
    }

    /// Writes `t,theta,fidelity,trace_err` rows.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "t,theta,fidelity,trace_err")?;
        for i in 0..self.len() {
            writeln!(
                w,
                "{},{},{},{}",
                fmt_sig(self.times[i]),
                fmt_sig(self.thetas[i]),
                fmt_sig(self.fidelities[i]),
                fmt_sig(self.trace_errors[i])
            )?;
        }
        Ok(())
    }
}

fn check_state(rho: &ComplexMatrix, time: f64, steps: usize) -> Result<f64, DynamicsError> {
    let fail = |reason: String| DynamicsError::IntegrationFailure { time, reason };
    if !rho.is_finite() {
        return Err(fail("non-finite density matrix".into()));
    }
    let herm = rho.hermiticity_defect();
    if herm > TRAJECTORY_HERMITIAN_TOL {
        return Err(fail(format!("hermiticity defect {herm:e}")));
    }
    let trace_err = (trace(rho) - crate::linalg::real(1.0)).norm();
    if trace_err > TRACE_TOL * (1.0 + steps as f64) {
        return Err(fail(format!("trace error {trace_err:e}")));
    }
    if !rho.is_positive_semidefinite(POSITIVITY_TOL) {
        return Err(fail(format!(
            "eigenvalue below -{POSITIVITY_TOL:e}; reduce the step size"
        )));
    }
    Ok(trace_err)
}

/// Integrates from `|ψ0⟩⟨ψ0|` to `t_final` with classical RK4.
///
/// Steps have size `dt` except the last, which is shortened so the final
/// sample lands exactly on `t_final`. Without a signal a controlled system
/// evolves under its drift alone.
pub fn integrate(
    spec: &SystemSpec,
    signal: Option<&ControlSignal>,
    t_final: f64,
    dt: f64,
) -> Result<Trajectory, DynamicsError> {
    if !(t_final > 0.0) || !(dt > 0.0) || dt > t_final || !t_final.is_finite() {
        return Err(DynamicsError::InvalidTimeGrid { t_final, dt });
    }
    let u_max = match (signal, spec.control.as_ref()) {
        (Some(_), None) => return Err(DynamicsError::NoControlHamiltonian),
        (_, c) => c.map_or(0.0, |c| c.u_max),
    };
    let control_at = |t: f64| -> Result<f64, DynamicsError> {
        let Some(s) = signal else { return Ok(0.0) };
        let u = s.value(t);
        if !(u.abs() <= u_max) {
            return Err(DynamicsError::ControlOutOfRange { time: t, u, u_max });
        }
        Ok(u)
    };

    let generator = Generator::new(spec);
    let psi0 = &spec.psi0;
    // Guard against a spurious extra step from roundoff in t_final / dt.
    let n_steps = ((t_final / dt) - 1e-9).ceil().max(1.0) as usize;

    let mut traj = Trajectory {
        times: Vec::with_capacity(n_steps + 1),
        states: Vec::with_capacity(n_steps + 1),
        thetas: Vec::with_capacity(n_steps + 1),
        fidelities: Vec::with_capacity(n_steps + 1),
        trace_errors: Vec::with_capacity(n_steps + 1),
    };
    let push = |traj: &mut Trajectory, t: f64, rho: ComplexMatrix, trace_err: f64| {
        let f = fidelity(psi0, &rho);
        traj.times.push(t);
        traj.thetas.push(f.clamp(0.0, 1.0).acos());
        traj.fidelities.push(f);
        traj.trace_errors.push(trace_err);
        traj.states.push(rho);
    };

    let mut rho = spec.rho0();
    let trace_err = check_state(&rho, 0.0, 0)?;
    push(&mut traj, 0.0, rho.clone(), trace_err);

    for step in 0..n_steps {
        let t = step as f64 * dt;
        let t_next = if step + 1 == n_steps {
            t_final
        } else {
            (step + 1) as f64 * dt
        };
        let h = t_next - t;
        let (u0, u_mid, u1) = (control_at(t)?, control_at(t + 0.5 * h)?, control_at(t_next)?);

        let k1 = generator.apply(u0, &rho);
        let k2 = generator.apply(u_mid, &(&rho + &k1.scale_real(0.5 * h)));
        let k3 = generator.apply(u_mid, &(&rho + &k2.scale_real(0.5 * h)));
        let k4 = generator.apply(u1, &(&rho + &k3.scale_real(h)));
        let incr = &(&k1 + &k4) + &(&k2 + &k3).scale_real(2.0);
        rho = &rho + &incr.scale_real(h / 6.0);

        let trace_err = check_state(&rho, t_next, step + 1)?;
        push(&mut traj, t_next, rho.clone(), trace_err);
    }
    Ok(traj)
}

/// One pointwise comparison of the angle rate against its bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateSample {
    pub time: f64,
    pub lhs: f64,
    pub rhs: f64,
}

impl RateSample {
    pub fn excess(&self) -> f64 {
        self.lhs - self.rhs
    }
}

/// Compares `dΘ/dt` along a trajectory with `(A√(1−cosΘ) + E)/sinΘ`.
///
/// The rate is estimated as `−(d/dt cosΘ)/sinΘ`, using the second-order
/// centered difference of the fidelity (nonuniform three-point stencil,
/// so a shortened last step is handled). The fidelity is smooth at `t = 0`
/// where `Θ` itself behaves like `√t`. Interior samples with
/// `sinΘ < RATE_SIN_CUTOFF` are dropped.
pub fn theta_rate_check(traj: &Trajectory, coeffs: &QslCoefficients) -> Vec<RateSample> {
    let n = traj.len();
    if n < 3 {
        return Vec::new();
    }
    let (t, f) = (&traj.times, &traj.fidelities);
    (1..n - 1)
        .filter_map(|i| {
            let theta = traj.thetas[i];
            let s = theta.sin();
            if s < RATE_SIN_CUTOFF {
                return None;
            }
            let h1 = t[i] - t[i - 1];
            let h2 = t[i + 1] - t[i];
            let dfdt = (h1 * h1 * f[i + 1] - h2 * h2 * f[i - 1] - (h1 * h1 - h2 * h2) * f[i])
                / (h1 * h2 * (h1 + h2));
            let lhs = -dfdt / s;
            let rhs = (coeffs.a * (1.0 - theta.cos()).max(0.0).sqrt() + coeffs.e) / s;
            Some(RateSample { time: t[i], lhs, rhs })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, real};
    use crate::qsl::{coefficients, CoeffSource};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    fn sigma_minus() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[[0.0, 0.0], [1.0, 0.0]]).unwrap()
    }

    fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, -1.0]]).unwrap()
    }

    fn p(i: usize) -> ComplexMatrix {
        outer(&PureState::basis(2, i))
    }

    fn damping_spec(gamma: f64) -> SystemSpec {
        SystemSpec::new(
            PureState::basis(2, 0),
            ComplexMatrix::zeros(2),
            vec![sigma_minus().scale_real(gamma.sqrt())],
        )
        .unwrap()
    }

    fn plus() -> PureState {
        PureState::new(vec![real(FRAC_1_SQRT_2), real(FRAC_1_SQRT_2)]).unwrap()
    }

    #[test]
    fn spec_validation() {
        let bad_h = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert!(matches!(
            SystemSpec::new(PureState::basis(2, 0), bad_h.clone(), vec![]),
            Err(DynamicsError::NotHermitian { .. })
        ));
        assert!(SystemSpec::new(PureState::basis(3, 0), ComplexMatrix::zeros(2), vec![]).is_err());
        let spec = SystemSpec::new(PureState::basis(2, 0), ComplexMatrix::zeros(2), vec![]).unwrap();
        assert!(spec.clone().with_control(bad_h, 1.0).is_err());
        assert!(matches!(
            spec.with_control(sigma_z(), -1.0),
            Err(DynamicsError::InvalidUMax(_))
        ));
    }

    #[test]
    fn dissipators_on_excited_state() {
        let m = sigma_minus();
        assert_eq!(dissipator(&ComplexMatrix::zeros(2), &p(0)).unwrap(), ComplexMatrix::zeros(2));
        assert_eq!(
            adjoint_dissipator(&ComplexMatrix::zeros(2), &p(0)).unwrap(),
            ComplexMatrix::zeros(2)
        );
        let gamma: f64 = 0.7;
        let mg = m.scale_real(gamma.sqrt());
        let d = dissipator(&mg, &p(0)).unwrap();
        let expected = (&p(1) - &p(0)).scale_real(gamma);
        assert!(d.max_abs_diff(&expected).unwrap() < 1e-12);
        let ad = adjoint_dissipator(&mg, &p(0)).unwrap();
        assert!(ad.max_abs_diff(&p(0).scale_real(-gamma)).unwrap() < 1e-12);
        assert!(dissipator(&m, &ComplexMatrix::zeros(3)).is_err());
    }

    #[test]
    fn dissipator_is_traceless() {
        let m = ComplexMatrix::from_rows(&[[c(0.3, -0.1), c(1.2, 0.4)], [c(-0.5, 0.0), c(0.2, 0.9)]]).unwrap();
        let rho = ComplexMatrix::from_rows(&[[real(0.6), c(0.1, 0.2)], [c(0.1, -0.2), real(0.4)]]).unwrap();
        let d = dissipator(&m, &rho).unwrap();
        assert!(trace(&d).norm() < 1e-12);
        assert!(d.is_hermitian(1e-12));
    }

    #[test]
    fn rhs_cases() {
        let empty = SystemSpec::new(PureState::basis(2, 0), ComplexMatrix::zeros(2), vec![]).unwrap();
        assert_eq!(master_rhs(&empty, None, &p(0)).unwrap(), ComplexMatrix::zeros(2));
        assert_eq!(
            master_rhs(&empty, Some(0.1), &p(0)),
            Err(DynamicsError::NoControlHamiltonian)
        );

        // H = Ωσz commutes with |0⟩⟨0|; only the dissipator survives.
        let spec = SystemSpec::new(
            PureState::basis(2, 0),
            sigma_z().scale_real(1.3),
            vec![sigma_minus()],
        )
        .unwrap();
        let rhs = master_rhs(&spec, None, &p(0)).unwrap();
        assert!(rhs.max_abs_diff(&(&p(1) - &p(0))).unwrap() < 1e-12);

        let ctrl = empty.with_control(sigma_z(), 0.5).unwrap();
        assert!(matches!(
            master_rhs(&ctrl, Some(0.6), &p(0)),
            Err(DynamicsError::ControlOutOfRange { .. })
        ));
        let rho = outer(&plus());
        let r = master_rhs(&ctrl, Some(0.5), &rho).unwrap();
        assert!(r.is_hermitian(1e-12));
        assert!(trace(&r).norm() < 1e-12);
    }

    #[test]
    fn static_system_stays_put() {
        let spec = SystemSpec::new(plus(), ComplexMatrix::zeros(2), vec![]).unwrap();
        let traj = integrate(&spec, None, 0.3, 0.01).unwrap();
        assert_eq!(traj.len(), 31);
        let rho0 = spec.rho0();
        for (state, theta) in traj.states.iter().zip(&traj.thetas) {
            assert_eq!(state, &rho0);
            assert_eq!(*theta, 0.0);
        }
        let coeffs = QslCoefficients::new(0.0, 0.0, CoeffSource::Generic);
        // Θ never leaves zero, so every sample falls under the sin cutoff.
        assert!(theta_rate_check(&traj, &coeffs).is_empty());
    }

    #[test]
    fn amplitude_damping_matches_exponential() {
        let traj = integrate(&damping_spec(1.0), None, 1.0, 1e-3).unwrap();
        assert_eq!(traj.final_time(), 1.0);
        let pop = traj.final_state().get(0, 0).re;
        assert_abs_diff_eq!(pop, (-1.0f64).exp(), epsilon = 1e-6);
        for (t, f) in traj.times.iter().zip(&traj.fidelities) {
            assert_abs_diff_eq!(*f, (-t).exp(), epsilon = 1e-9);
        }
    }

    #[test]
    fn closed_rotation_from_plus() {
        let omega = 1.0;
        let spec = SystemSpec::new(plus(), sigma_z().scale_real(omega), vec![]).unwrap();
        let traj = integrate(&spec, None, 0.7, 1e-3).unwrap();
        for (t, f) in traj.times.iter().zip(&traj.fidelities) {
            assert_abs_diff_eq!(*f, (omega * t).cos().powi(2), epsilon = 1e-10);
        }
    }

    #[test]
    fn last_step_is_shortened() {
        let traj = integrate(&damping_spec(1.0), None, 0.105, 0.01).unwrap();
        assert_eq!(traj.len(), 12);
        assert_eq!(traj.final_time(), 0.105);
        assert_abs_diff_eq!(traj.times[10], 0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(traj.fidelities[11], (-0.105f64).exp(), epsilon = 1e-9);
    }

    #[test]
    fn invalid_grid_and_controls() {
        let spec = damping_spec(1.0);
        assert!(matches!(integrate(&spec, None, 0.0, 0.1), Err(DynamicsError::InvalidTimeGrid { .. })));
        assert!(matches!(integrate(&spec, None, 1.0, 2.0), Err(DynamicsError::InvalidTimeGrid { .. })));
        let sig = ControlSignal::constant(0.5);
        assert_eq!(
            integrate(&spec, Some(&sig), 1.0, 0.1).unwrap_err(),
            DynamicsError::NoControlHamiltonian
        );
        let ctrl = spec.with_control(sigma_z(), 0.4).unwrap();
        let err = integrate(&ctrl, Some(&ControlSignal::from_fn(|t| t)), 1.0, 0.1).unwrap_err();
        match err {
            DynamicsError::ControlOutOfRange { time, .. } => assert!(time > 0.4 && time <= 0.45),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn huge_step_is_reported() {
        let spec = SystemSpec::new(
            PureState::basis(2, 0),
            ComplexMatrix::zeros(2),
            vec![sigma_minus().scale_real(10.0)],
        )
        .unwrap();
        let err = integrate(&spec, None, 1.0, 0.5).unwrap_err();
        assert!(matches!(err, DynamicsError::IntegrationFailure { .. }), "{err:?}");
    }

    #[test]
    fn relative_purity_values() {
        let psi = plus();
        assert_eq!(relative_purity(&psi, &outer(&psi)), 0.0);
        let minus = PureState::new(vec![real(FRAC_1_SQRT_2), real(-FRAC_1_SQRT_2)]).unwrap();
        assert_abs_diff_eq!(relative_purity(&psi, &outer(&minus)), FRAC_PI_2, epsilon = 1e-12);
        let rho = ComplexMatrix::diagonal(&[real(0.75), real(0.25)]);
        let theta = relative_purity(&PureState::basis(2, 0), &rho);
        assert_abs_diff_eq!(theta, 0.75f64.acos(), epsilon = 1e-15);
        assert_abs_diff_eq!(theta, 0.722734247813, epsilon = 1e-11);
    }

    #[test]
    fn rate_bound_holds_for_damping_and_rotation() {
        let spec = damping_spec(1.0);
        let coeffs = coefficients(&spec).unwrap();
        let traj = integrate(&spec, None, 1.0, 1e-3).unwrap();
        let samples = theta_rate_check(&traj, &coeffs);
        assert!(samples.len() > 900);
        assert!(samples.iter().all(|s| s.lhs <= s.rhs + 1e-4));

        let spec = SystemSpec::new(plus(), sigma_z(), vec![]).unwrap();
        let coeffs = coefficients(&spec).unwrap();
        let traj = integrate(&spec, None, 1.0, 1e-3).unwrap();
        let samples = theta_rate_check(&traj, &coeffs);
        assert!(!samples.is_empty());
        assert!(samples.iter().all(|s| s.lhs <= s.rhs + 1e-4));
    }

    #[test]
    fn trajectory_csv_layout() {
        let traj = integrate(&damping_spec(1.0), None, 0.2, 0.1).unwrap();
        let mut buf = Vec::new();
        traj.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "t,theta,fidelity,trace_err");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("0,0,1,"));
    }
}

// Copyright 2026 The qsl-reach Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;
use std::fmt::Display;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use qsl_core::dynamics::{integrate, ControlSignal, DynamicsError, SystemSpec};
use qsl_core::format::fmt_sig;
use qsl_core::models::{
    bell_coefficients, bell_spec, gate_radius, qubit_spec, qutrit_example_state, qutrit_spec, so3_gate, su2_gate,
    GateParams, QubitParams,
};
use qsl_core::qsl::{
    coefficients, lambda_from_theta, lambda_max, BoundResult, CoeffSource, QslCoefficients,
    Radius, Tighter,
};
use qsl_core::reachset::{
    self, check_bound, validate_horizons, AxisSpec, GateMapFixed, GateModel, ReachError, ReachRecord, SweepGrid,
    DEFAULT_HORIZONS, RANDOM_SYSTEM_DISTRIBUTION,
};
use serde_json::{json, Map, Value};

use crate::config::parse_list;
use crate::{
    BellSweepArgs, BoundArgs, CliError, Format, GateMapArgs, Model, Physics, Shared, SimulateArgs, SweepLambdaArgs,
    VerifyArgs,
};

fn cfg(e: impl Display) -> CliError {
    CliError::Config(e.to_string())
}

fn from_dynamics(e: DynamicsError) -> CliError {
    match e {
        DynamicsError::IntegrationFailure { .. } => CliError::Integration(e.to_string()),
        other => cfg(other),
    }
}

fn from_reach(e: ReachError) -> CliError {
    match e {
        ReachError::Dynamics(d) => from_dynamics(d),
        other => cfg(other),
    }
}

fn model_name(m: Model) -> &'static str {
    match m {
        Model::Qubit => "qubit",
        Model::QubitGate => "qubit-gate",
        Model::Qutrit => "qutrit",
        Model::QutritGate => "qutrit-gate",
        Model::Bell => "bell",
    }
}

/// JSON number, or the CSV spelling for non-finite values.
fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(fmt_sig(x))
    }
}

fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

fn open_out(shared: &Shared) -> Result<Box<dyn Write>, CliError> {
    Ok(match &shared.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| cfg(format!("cannot create {}: {e}", path.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json(shared: &Shared, value: &Value) -> Result<(), CliError> {
    let mut w = open_out(shared)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(io::Error::from)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn horizons(shared: &Shared) -> Result<Vec<f64>, CliError> {
    let hs = match (&shared.horizons, shared.t) {
        (Some(list), _) => parse_list::<f64>(list).map_err(cfg)?,
        (None, Some(t)) => vec![t],
        (None, None) => DEFAULT_HORIZONS.to_vec(),
    };
    validate_horizons(&hs).map_err(cfg)?;
    Ok(hs)
}

fn positive_time(name: &str, t: f64) -> Result<f64, CliError> {
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(cfg(format!("{name} = {t} outside (0, inf)")))
    }
}

fn qubit_params(p: &Physics) -> QubitParams {
    QubitParams {
        theta: p.theta,
        phi: p.phi,
        omega: p.omega,
        gamma: p.gamma,
        u_max: p.u_max,
    }
}

fn gate_params(p: &Physics) -> GateParams {
    GateParams {
        alpha: p.alpha,
        beta: p.beta,
        delta: p.delta,
    }
}

/// The system each model describes, with no target attached.
fn model_spec(p: &Physics) -> Result<SystemSpec, CliError> {
    match p.model {
        Model::Qubit => qubit_spec(&qubit_params(p), false),
        Model::QubitGate => qubit_spec(&qubit_params(p), true),
        Model::Qutrit | Model::QutritGate => qutrit_spec(qutrit_example_state(), p.omega, p.u_max),
        Model::Bell => bell_spec(p.state, p.gamma),
    }
    .map_err(cfg)
}

fn tighter_name(t: Tighter) -> &'static str {
    match t {
        Tighter::TStar => "t_star",
        Tighter::DelCampo => "del_campo",
        Tighter::Equal => "equal",
    }
}

fn source_name(s: CoeffSource) -> &'static str {
    match s {
        CoeffSource::Generic => "generic",
        CoeffSource::Controlled => "controlled",
        CoeffSource::ClosedForm => "closed_form",
    }
}

pub fn bound(a: &BoundArgs) -> Result<(), CliError> {
    let p = &a.physics;
    let spec = model_spec(p)?;
    let is_gate = matches!(p.model, Model::QubitGate | Model::QutritGate);
    let (coeffs, radius): (QslCoefficients, Radius) = if is_gate {
        if a.lambda.is_some() || a.theta_t.is_some() {
            return Err(cfg("--lambda/--theta-t apply to non-gate models; gates are set by --alpha/--beta/--delta"));
        }
        let g = gate_params(p);
        let gate = if p.model == Model::QubitGate {
            g.validate_qubit().map_err(cfg)?;
            su2_gate(&g)
        } else {
            g.validate_qutrit().map_err(cfg)?;
            so3_gate(&g)
        };
        let radius = gate_radius(spec.psi0(), &gate).map_err(cfg)?;
        (coefficients(&spec).map_err(cfg)?, radius)
    } else {
        let radius = match (a.lambda, a.theta_t) {
            (Some(l), _) => Radius::new(l).map_err(cfg)?,
            (None, Some(th)) => lambda_from_theta(th).map_err(cfg)?,
            (None, None) => Radius::ONE,
        };
        let coeffs = match p.model {
            Model::Bell => bell_coefficients(p.state, p.gamma).map_err(cfg)?,
            _ => coefficients(&spec).map_err(cfg)?,
        };
        (coeffs, radius)
    };
    let result = BoundResult::evaluate(&coeffs, radius);
    let horizon = a.shared.t.map(|t| positive_time("T", t)).transpose()?;
    let reach = horizon.map(|t| lambda_max(&coeffs, t).value());

    let name = model_name(p.model);
    match a.shared.format {
        Format::Csv => {
            let mut w = open_out(&a.shared)?;
            writeln!(w, "model,source,A,E,lambda,t_star,t_dc,tighter,T,lambda_max")?;
            let opt = |x: Option<f64>| x.map(fmt_sig).unwrap_or_default();
            writeln!(
                w,
                "{name},{},{},{},{},{},{},{},{},{}",
                source_name(coeffs.source),
                fmt_sig(coeffs.a),
                fmt_sig(coeffs.e),
                fmt_sig(radius.value()),
                fmt_sig(result.t_star),
                fmt_sig(result.t_dc),
                tighter_name(result.tighter()),
                opt(horizon),
                opt(reach),
            )?;
            w.flush()?;
            Ok(())
        }
        Format::Json => {
            let mut obj = json!({
                "model": name,
                "source": source_name(coeffs.source),
                "A": num(coeffs.a),
                "E": num(coeffs.e),
                "lambda": num(radius.value()),
                "t_star": num(result.t_star),
                "t_dc": num(result.t_dc),
                "tighter": tighter_name(result.tighter()),
            });
            if let (Some(t), Some(l)) = (horizon, reach) {
                obj["T"] = num(t);
                obj["lambda_max"] = num(l);
            }
            write_json(&a.shared, &obj)
        }
    }
}

pub fn simulate(a: &SimulateArgs) -> Result<(), CliError> {
    let p = &a.physics;
    let spec = model_spec(p)?;
    if a.u.is_some() && spec.control().is_none() {
        return Err(cfg(format!("--u needs a controlled model; {} has none", model_name(p.model))));
    }
    let t = positive_time("T", a.shared.t.unwrap_or(1.0))?;
    let dt = positive_time("dt", a.shared.dt)?;
    let signal = a.u.map(ControlSignal::constant);
    let traj = integrate(&spec, signal.as_ref(), t, dt).map_err(from_dynamics)?;
    let coeffs = coefficients(&spec).map_err(cfg)?;
    let check = check_bound(&traj, &coeffs);
    let verdict = if check.holds() { "bound holds" } else { "bound violated" };

    match a.shared.format {
        Format::Csv => {
            let mut w = open_out(&a.shared)?;
            traj.write_csv(&mut w)?;
            writeln!(
                w,
                "# T={} theta_T={} lambda={} t_star={} margin={} verdict={verdict}",
                fmt_sig(check.t),
                fmt_sig(check.theta_t),
                fmt_sig(check.lambda),
                fmt_sig(check.t_star),
                fmt_sig(check.margin),
            )?;
            w.flush()?;
        }
        Format::Json => {
            let obj = json!({
                "model": model_name(p.model),
                "trajectory": {
                    "t": nums(&traj.times),
                    "theta": nums(&traj.thetas),
                    "fidelity": nums(&traj.fidelities),
                    "trace_err": nums(&traj.trace_errors),
                },
                "summary": {
                    "T": num(check.t),
                    "theta_T": num(check.theta_t),
                    "lambda": num(check.lambda),
                    "t_star": num(check.t_star),
                    "margin": num(check.margin),
                    "verdict": verdict,
                },
            });
            write_json(&a.shared, &obj)?;
        }
    }
    if check.holds() {
        Ok(())
    } else {
        Err(CliError::Violation(format!("T* = {} exceeds T = {}", fmt_sig(check.t_star), fmt_sig(check.t))))
    }
}

fn records_json(records: &[ReachRecord]) -> Value {
    Value::Array(
        records
            .iter()
            .map(|r| {
                let mut m = Map::new();
                m.insert("label".into(), json!(r.label));
                for c in &r.coords {
                    m.insert(c.name.into(), num(c.value));
                }
                m.insert("t_star".into(), num(r.t_star));
                m.insert("horizons".into(), nums(&r.horizons));
                m.insert("lambda_max".into(), nums(&r.lambda_max));
                m.insert("reachable".into(), json!(r.reachable));
                Value::Object(m)
            })
            .collect(),
    )
}

fn emit_records(
    shared: &Shared,
    records: &[ReachRecord],
    csv: impl FnOnce(&mut dyn Write, &[ReachRecord]) -> io::Result<()>,
) -> Result<(), CliError> {
    match shared.format {
        Format::Csv => {
            let mut w = open_out(shared)?;
            csv(&mut w, records)?;
            w.flush()?;
            Ok(())
        }
        Format::Json => write_json(shared, &records_json(records)),
    }
}

pub fn sweep_lambda(a: &SweepLambdaArgs) -> Result<(), CliError> {
    let base = QubitParams {
        theta: 0.0,
        phi: a.phi,
        omega: a.omega,
        gamma: a.gamma,
        ..Default::default()
    };
    base.validate().map_err(cfg)?;
    let grid = SweepGrid::new(
        vec![AxisSpec::new("theta", a.theta_min, a.theta_max, a.points)],
        horizons(&a.shared)?,
    );
    let records = reachset::sweep_lambda_vs_theta(&base, &grid).map_err(from_reach)?;
    emit_records(&a.shared, &records, |w, r| reachset::write_lambda_sweep_csv(w, r))
}

pub fn gate_map(a: &GateMapArgs) -> Result<(), CliError> {
    let model = match a.model {
        Model::Qubit | Model::QubitGate => GateModel::Qubit,
        Model::Qutrit | Model::QutritGate => GateModel::Qutrit,
        Model::Bell => return Err(cfg("gate-map supports the qubit and qutrit models")),
    };
    let fixed = GateMapFixed {
        theta: a.theta,
        omega: a.omega,
        u_max: a.u_max,
    };
    let grid = SweepGrid::new(
        vec![
            AxisSpec::new("alpha", 0.0, 2.0 * PI, a.points),
            AxisSpec::new("beta", 0.0, PI, a.points),
        ],
        horizons(&a.shared)?,
    );
    let records = reachset::gate_reach_map(model, &fixed, &grid).map_err(from_reach)?;
    emit_records(&a.shared, &records, |w, r| reachset::write_gate_map_csv(w, r))
}

pub fn bell_sweep(a: &BellSweepArgs) -> Result<(), CliError> {
    if a.shared.horizons.is_some() {
        return Err(cfg("bell-sweep evaluates a single horizon; use --T"));
    }
    let t = positive_time("T", a.shared.t.unwrap_or(0.5))?;
    let axis = AxisSpec::new("gamma", a.gamma_min, a.gamma_max, a.points);
    let records = reachset::bell_sweep(&axis, t).map_err(from_reach)?;
    emit_records(&a.shared, &records, |w, r| reachset::write_bell_sweep_csv(w, r))
}

pub fn verify(a: &VerifyArgs) -> Result<(), CliError> {
    let dims = parse_list::<usize>(&a.dims).map_err(cfg)?;
    if dims.is_empty() || dims.iter().any(|&d| d < 2) {
        return Err(cfg(format!("dims = {:?}: every dimension must be at least 2", a.dims)));
    }
    if a.trials == 0 {
        return Err(cfg("trials must be at least 1"));
    }
    let t = positive_time("T", a.shared.t.unwrap_or(0.5))?;
    let dt = positive_time("dt", a.shared.dt)?;
    let seed = a.shared.seed;
    let records = reachset::verify_bound(seed, a.trials, &dims, t, dt).map_err(from_reach)?;

    match a.shared.format {
        Format::Csv => {
            let mut w = open_out(&a.shared)?;
            reachset::write_verify_csv(&mut w, seed, &records)?;
            w.flush()?;
        }
        Format::Json => {
            let rows: Vec<Value> = records
                .iter()
                .map(|r| {
                    json!({
                        "trial": r.trial,
                        "seed": r.seed,
                        "dim": r.dim,
                        "h_norm": num(r.h_norm),
                        "m_norm": num(r.m_norm),
                        "T": num(r.t),
                        "theta_T": num(r.theta_t),
                        "lambda": num(r.lambda),
                        "t_star": num(r.t_star),
                        "margin": num(r.margin),
                        "rate_samples": r.rate_samples,
                        "rate_max_excess": num(r.rate_max_excess),
                    })
                })
                .collect();
            let obj = json!({
                "master_seed": seed,
                "distribution": RANDOM_SYSTEM_DISTRIBUTION,
                "records": rows,
            });
            write_json(&a.shared, &obj)?;
        }
    }

    let violated: Vec<_> = records.iter().filter(|r| r.violated()).collect();
    let min_margin = records.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
    eprintln!(
        "verify: {} trials, {} violations, min margin {}",
        records.len(),
        violated.len(),
        fmt_sig(min_margin)
    );
    for r in &violated {
        eprintln!(
            "violation: trial {} seed {} dim {} margin {} rate excess {}",
            r.trial,
            r.seed,
            r.dim,
            fmt_sig(r.margin),
            fmt_sig(r.rate_max_excess)
        );
    }
    if violated.is_empty() {
        Ok(())
    } else {
        Err(CliError::Violation(format!("{} of {} trials violated the bound", violated.len(), records.len())))
    }
}


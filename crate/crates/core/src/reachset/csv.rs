// Copyright 2026 The qsl-reach Authors
// SPDX-License-Identifier: Apache-2.0

//! CSV writers. Floats use [`fmt_sig`]; infinite bounds are written `inf`.

use std::io::{self, Write};

use super::{ReachRecord, VerifyRecord, RANDOM_SYSTEM_DISTRIBUTION};
use crate::format::fmt_sig;

fn coord(r: &ReachRecord, name: &str) -> String {
    r.coord(name).map_or_else(String::new, fmt_sig)
}

/// `theta,gamma,omega,T,lambda_max`, one row per grid point and horizon.
pub fn write_lambda_sweep_csv<W: Write>(mut w: W, records: &[ReachRecord]) -> io::Result<()> {
    writeln!(w, "theta,gamma,omega,T,lambda_max")?;
    for r in records {
        for (t, l) in r.horizons.iter().zip(&r.lambda_max) {
            writeln!(
                w,
                "{},{},{},{},{}",
                coord(r, "theta"),
                coord(r, "gamma"),
                coord(r, "omega"),
                fmt_sig(*t),
                fmt_sig(*l)
            )?;
        }
    }
    Ok(())
}

/// `model,theta,alpha,beta,t_star,reach_T1,reach_T2,...` with one 0/1
/// column per horizon. A leading `# horizons:` line lists `T1, T2, ...`.
pub fn write_gate_map_csv<W: Write>(mut w: W, records: &[ReachRecord]) -> io::Result<()> {
    let horizons = records.first().map_or(&[][..], |r| r.horizons.as_slice());
    let listed: Vec<String> = horizons.iter().map(|&h| fmt_sig(h)).collect();
    writeln!(w, "# horizons: {}", listed.join(","))?;
    write!(w, "model,theta,alpha,beta,t_star")?;
    for k in 1..=horizons.len() {
        write!(w, ",reach_T{k}")?;
    }
    writeln!(w)?;
    for r in records {
        write!(
            w,
            "{},{},{},{},{}",
            r.label,
            coord(r, "theta"),
            coord(r, "alpha"),
            coord(r, "beta"),
            fmt_sig(r.t_star)
        )?;
        for &ok in &r.reachable {
            write!(w, ",{}", u8::from(ok))?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// `state,gamma,T,lambda_max`.
pub fn write_bell_sweep_csv<W: Write>(mut w: W, records: &[ReachRecord]) -> io::Result<()> {
    writeln!(w, "state,gamma,T,lambda_max")?;
    for r in records {
        for (t, l) in r.horizons.iter().zip(&r.lambda_max) {
            writeln!(w, "{},{},{},{}", r.label, coord(r, "gamma"), fmt_sig(*t), fmt_sig(*l))?;
        }
    }
    Ok(())
}

/// `trial,seed,dim,T,theta_T,lambda,t_star,margin`, preceded by `#` lines
/// recording the master seed and the sampling distribution.
pub fn write_verify_csv<W: Write>(mut w: W, master_seed: u64, records: &[VerifyRecord]) -> io::Result<()> {
    writeln!(w, "# master_seed: {master_seed}")?;
    writeln!(w, "# distribution: {RANDOM_SYSTEM_DISTRIBUTION}")?;
    writeln!(w, "trial,seed,dim,T,theta_T,lambda,t_star,margin")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            r.trial,
            r.seed,
            r.dim,
            fmt_sig(r.t),
            fmt_sig(r.theta_t),
            fmt_sig(r.lambda),
            fmt_sig(r.t_star),
            fmt_sig(r.margin)
        )?;
    }
    Ok(())
}

// Copyright 2026 The qsl-reach Authors
// SPDX-License-Identifier: Apache-2.0

//! Value parsers and `key = value` config-file merging.
//!
//! A config file is spliced into the argument list directly after the
//! subcommand, ahead of the user's own flags. Every subcommand lets a later
//! occurrence of a flag override an earlier one, so flags on the command
//! line win over the file.

use std::f64::consts::PI;
use std::ffi::OsString;
use std::fs;
use std::path::Path;

use crate::CliError;

/// Radians, or a multiple of π written with a `pi` suffix (`0.25pi`, `pi`).
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let value = match t.strip_suffix("pi") {
        Some("") => PI,
        Some("-") => -PI,
        Some(coef) => coef.trim().parse::<f64>().map_err(|e| format!("bad angle {s:?}: {e}"))? * PI,
        None => t.parse::<f64>().map_err(|e| format!("bad angle {s:?}: {e}"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("angle {s:?} is not finite"))
    }
}

pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<T>().map_err(|e| format!("bad list entry {x:?}: {e}")))
        .collect()
}

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Config(format!("config line {}: expected key = value", lineno + 1)));
        };
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        let value = value.trim().trim_matches('"');
        if key.is_empty() || value.is_empty() {
            return Err(CliError::Config(format!("config line {}: empty key or value", lineno + 1)));
        }
        pairs.push((key, value.to_string()));
    }
    Ok(pairs)
}

pub fn read_config(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

/// Removes `--config FILE` from `args` and splices the file's flags in
/// right after the subcommand name.
pub fn expand_args(mut args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let mut config = None;
    let mut i = 1;
    while i < args.len() {
        let arg = args[i].to_string_lossy().into_owned();
        if arg == "--config" {
            if i + 1 >= args.len() {
                return Err(CliError::Config("--config needs a file path".into()));
            }
            config = Some(args.remove(i + 1));
            args.remove(i);
        } else if let Some(path) = arg.strip_prefix("--config=") {
            config = Some(OsString::from(path));
            args.remove(i);
        } else {
            i += 1;
        }
    }
    let Some(path) = config else { return Ok(args) };
    let pairs = read_config(Path::new(&path))?;
    let Some(sub) = args.iter().skip(1).position(|a| !a.to_string_lossy().starts_with('-')) else {
        return Err(CliError::Config("no command given".into()));
    };
    let at = sub + 2;
    let spliced: Vec<OsString> = pairs
        .into_iter()
        .flat_map(|(k, v)| [OsString::from(format!("--{k}")), OsString::from(v)])
        .collect();
    args.splice(at..at, spliced);
    Ok(args)
}

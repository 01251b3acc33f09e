// Copyright 2026 The qsl-reach Authors
// SPDX-License-Identifier: Apache-2.0

//! Number rendering shared by every CSV writer.

/// Significant digits used for every float written to CSV.
pub const SIG_DIGITS: usize = 9;

/// Renders `x` with [`SIG_DIGITS`] significant digits, `%g` style: fixed
/// notation for moderate exponents, scientific otherwise, trailing zeros
/// trimmed. Infinity is written as `inf`.
pub fn fmt_sig(x: f64) -> String {
    fmt_sig_digits(x, SIG_DIGITS)
}

pub fn fmt_sig_digits(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".to_string();
    }
    // Round once in scientific form so the exponent reflects carries.
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        format!("{mantissa}e{exp}")
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

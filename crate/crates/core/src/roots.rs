// Copyright 2026 The qsl-reach Authors
// SPDX-License-Identifier: Apache-2.0

//! Bisection on a monotone predicate.

/// Shrinks `[lo, hi]` until `hi − lo ≤ tol`, keeping `accept(lo)` true and
/// `accept(hi)` false. The caller guarantees both endpoint conditions and
/// that `accept` flips exactly once on the interval.
pub fn bisect_boundary(mut lo: f64, mut hi: f64, tol: f64, accept: impl Fn(f64) -> bool) -> (f64, f64) {
    debug_assert!(lo <= hi);
    // 200 halvings exhaust f64 resolution on any finite interval.
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        if accept(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Root of a continuous `f` with a sign change on `[lo, hi]`.
pub fn bisect_root(lo: f64, hi: f64, tol: f64, f: impl Fn(f64) -> f64) -> Option<f64> {
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return None;
    }
    let below = flo < 0.0;
    let (a, b) = bisect_boundary(lo, hi, tol, |x| (f(x) < 0.0) == below);
    Some(0.5 * (a + b))
}

//! Solver for the recursion exponent: the positive root of
//! `(x/2)^x = v`, equivalently `x·ln(x/2) = ln v`.
//!
//! `g(x) = x·ln(x/2)` is strictly increasing for `x > 2/e`; the root is
//! taken on that branch. For `v ≥ 1` it lies in `[2, ∞)`. For
//! `v < e^(−2/e) ≈ 0.479` the equation has no positive root at all
//! (`g` attains its minimum `−2/e` at `x = 2/e`), so such inputs are a
//! domain error; the dualization recursion only ever asks for `v ≥ 4`.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ChiError {
    #[error("chi(v) requires v > 0, got {0}")]
    NonPositive(f64),
    #[error("(x/2)^x = {0} has no root on the increasing branch (v < e^(-2/e))")]
    NoRoot(f64),
}

fn g(x: f64, target: f64) -> f64 {
    x * (x / 2.0).ln() - target
}

fn g_prime(x: f64) -> f64 {
    (x / 2.0).ln() + 1.0
}

/// The root of `(x/2)^x = v` on the branch `x ≥ 2/e`.
pub fn chi(v: f64) -> Result<f64, ChiError> {
    if !(v > 0.0) {
        return Err(ChiError::NonPositive(v));
    }
    let target = v.ln();
    if target == 0.0 {
        return Ok(2.0);
    }
    let (mut lo, mut hi);
    if target > 0.0 {
        lo = 2.0;
        hi = 4.0;
        while g(hi, target) < 0.0 {
            lo = hi;
            hi *= 2.0;
        }
    } else {
        let branch_min = 2.0 / std::f64::consts::E;
        if target < g(branch_min, 0.0) {
            return Err(ChiError::NoRoot(v));
        }
        lo = branch_min;
        hi = 2.0;
    }
    // Bisection to a tight bracket, then a few Newton polish steps.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid, target) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..4 {
        let step = g(x, target) / g_prime(x);
        if step.is_finite() {
            x -= step;
        }
    }
    Ok(x)
}

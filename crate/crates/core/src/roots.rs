//! Scalar root finding by bisection.

use crate::error::{Error, Result};

/// Absolute tolerance on roots.
pub const ROOT_TOL: f64 = 1e-12;
/// Iteration cap shared by every bisection in the crate.
pub const MAX_ITER: usize = 200;

/// Bisect `f` on `[lo, hi]`, which must bracket a sign change.
///
/// Stops once the bracket is narrower than `tol`, once the midpoint can no
/// longer be distinguished from an endpoint in floating point, or after
/// [`MAX_ITER`] halvings.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::NoBracket { lo, hi });
    }
    for _ in 0..MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Root of a strictly increasing `f` on `(0, inf)`, found by doubling an
/// upper bound from `start` and then bisecting.
pub(crate) fn increasing_root<F>(f: F, lo: f64, start: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut hi = start.max(lo * 2.0);
    let mut steps = 0;
    while f(hi) < 0.0 {
        hi *= 2.0;
        steps += 1;
        if steps > 2000 || !hi.is_finite() {
            return Err(Error::NoBracket { lo, hi });
        }
    }
    bisect(f, lo, hi, ROOT_TOL)
}

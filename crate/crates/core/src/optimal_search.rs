//! Photon number that minimizes the single-measurement precision, the
//! small-loss constants `nu` and `mu`, and the critical loss above which
//! adding photons never helps.

use crate::analytics::{d_log_precision_dn_unchecked, log_min_phase_opt_real, min_phase_opt_real};
use crate::error::{Error, Result};
use crate::roots::{bisect, increasing_root, ROOT_TOL};

/// Default upper bound on the photon-number search.
pub const DEFAULT_N_CAP: u64 = 1_000_000_000;

/// Outcome of the photon-number optimization at fixed `eta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimumResult {
    /// Best integer photon number in `[1, n_cap]`.
    pub n_star: u64,
    /// Minimum detectable phase at `n_star`.
    pub precision_at_opt: f64,
    /// Root of `d ln(precision)/dN` over continuous `N`.
    pub continuous_n: f64,
    /// Small-loss prediction `nu / L`.
    pub asymptotic_n: f64,
    /// Small-loss prediction `mu L`.
    pub asymptotic_precision: f64,
}

/// Smaller of the two integers around `root` under `objective`, clamped to
/// `[1, cap]`. Near-ties (relative 1e-15) go to the smaller integer.
pub(crate) fn best_adjacent_integer<F>(root: f64, cap: u64, objective: F) -> u64
where
    F: Fn(u64) -> f64,
{
    if root >= cap as f64 {
        return cap;
    }
    let lo = (root.floor() as u64).clamp(1, cap);
    let hi = (root.ceil() as u64).clamp(1, cap);
    if lo == hi {
        return lo;
    }
    let (f_lo, f_hi) = (objective(lo), objective(hi));
    let scale = f_lo.abs().max(f_hi.abs()).max(f64::MIN_POSITIVE);
    if f_hi < f_lo && (f_lo - f_hi) > 1e-15 * scale {
        hi
    } else {
        lo
    }
}

/// Integer and continuous minimizers of the single-measurement precision.
///
/// `d ln(precision)/dN` is strictly increasing in `N` whenever `eta < 1`, so
/// its unique root brackets the integer optimum.
pub fn n_min_integer(eta: f64, n_cap: u64) -> Result<OptimumResult> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::InvalidEta(eta));
    }
    let n_cap = n_cap.max(1);
    let root = increasing_root(|n| d_log_precision_dn_unchecked(n, eta), 1e-9, 4.0)?;
    let n_star = best_adjacent_integer(root, n_cap, |n| log_min_phase_opt_real(n as f64, eta));
    let loss = 1.0 - eta;
    let nu = solve_nu();
    Ok(OptimumResult {
        n_star,
        precision_at_opt: min_phase_opt_real(n_star as f64, eta),
        continuous_n: root,
        asymptotic_n: nu / loss,
        asymptotic_precision: mu_from_nu(nu)? * loss,
    })
}

/// Positive root of `nu = 2 (e^-nu + 1)`.
pub fn solve_nu() -> f64 {
    bisect(|x| 2.0 * ((-x).exp() + 1.0) - x, 1.0, 4.0, ROOT_TOL)
        .expect("[1, 4] brackets the root")
}

/// `mu = sqrt((e^nu + 1)/2) / nu`.
pub fn mu_from_nu(nu: f64) -> Result<f64> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::NonPositive(nu));
    }
    Ok((0.5 * (nu.exp() + 1.0)).sqrt() / nu)
}

/// `mu` evaluated at [`solve_nu`].
pub fn mu() -> f64 {
    mu_from_nu(solve_nu()).expect("nu is positive")
}

/// Small-loss predictions `(nu / L, mu L)` for the optimal photon number and
/// the precision it reaches.
pub fn asymptotic_optimum(loss: f64) -> Result<(f64, f64)> {
    if !(loss > 0.0 && loss < 1.0) {
        return Err(Error::InvalidLoss(loss));
    }
    let nu = solve_nu();
    Ok((nu / loss, mu_from_nu(nu)? * loss))
}

/// Transmissivity at which one- and two-photon NOON states give the same
/// precision: `(sqrt 7 - 2)/3`.
pub fn eta_critical() -> f64 {
    (7f64.sqrt() - 2.0) / 3.0
}

/// Loss above which precision never improves with `N`.
pub fn loss_critical() -> f64 {
    1.0 - eta_critical()
}

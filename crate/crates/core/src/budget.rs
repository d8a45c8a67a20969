//! Repeated measurements under a fixed average photon budget `N_T = N M`.
//!
//! `R_NOON` is the kappa-free ratio of the budgeted NOON precision to the
//! unentangled coherent-state baseline at the same loss and budget.

use crate::analytics::{
    check_eta, ln_half_one_plus_exp, loss_exponent, NoonProbe, LOG_DOMAIN_THRESHOLD,
};
use crate::error::{Error, Result};
use crate::optimal_search::best_adjacent_integer;
use crate::roots::{bisect, increasing_root, ROOT_TOL};

/// Total photon budget and the order-unity constant of the unentangled
/// baseline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonBudget {
    n_total: u64,
    kappa: f64,
}

impl PhotonBudget {
    pub fn new(n_total: u64, kappa: f64) -> Result<Self> {
        if n_total == 0 {
            return Err(Error::EmptyBudget(n_total));
        }
        if !(kappa > 0.0 && kappa.is_finite()) {
            return Err(Error::InvalidKappa(kappa));
        }
        Ok(Self { n_total, kappa })
    }

    /// Budget with `kappa = 1`.
    pub fn with_total(n_total: u64) -> Result<Self> {
        Self::new(n_total, 1.0)
    }

    pub fn n_total(&self) -> u64 {
        self.n_total
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Number of repetitions `M = N_T / N`; may be fractional.
    pub fn measurements(&self, probe: NoonProbe) -> f64 {
        self.n_total as f64 / probe.n() as f64
    }
}

/// `kappa / sqrt(eta N_T)`, independent of how the budget is split.
pub fn unentangled_precision(b: &PhotonBudget, eta: f64) -> Result<f64> {
    check_eta(eta)?;
    Ok(b.kappa / (eta * b.n_total as f64).sqrt())
}

/// `ln R_NOON` for continuous `N`.
pub(crate) fn log_r_noon_real(n: f64, eta: f64) -> f64 {
    0.5 * (eta.ln() + ln_half_one_plus_exp(loss_exponent(n, eta)) - n.ln())
}

/// Budgeted NOON precision `sqrt((eta^-N + 1) / (2 N N_T))`.
pub fn noon_precision_budgeted(probe: NoonProbe, b: &PhotonBudget, eta: f64) -> Result<f64> {
    check_eta(eta)?;
    if probe.n() > b.n_total {
        return Err(Error::ExceedsBudget { n: probe.n(), n_total: b.n_total });
    }
    let n = probe.n() as f64;
    let nt = b.n_total as f64;
    let x = loss_exponent(n, eta);
    if x <= LOG_DOMAIN_THRESHOLD {
        Ok((0.5 * (x.exp() + 1.0)).sqrt() / (n * nt).sqrt())
    } else {
        Ok((0.5 * (ln_half_one_plus_exp(x) - n.ln() - nt.ln())).exp())
    }
}

/// `R_NOON = sqrt(eta (eta^-N + 1) / (2N))`.
pub fn r_noon(probe: NoonProbe, eta: f64) -> Result<f64> {
    check_eta(eta)?;
    let n = probe.n() as f64;
    if eta == 1.0 {
        return Ok(1.0 / n.sqrt());
    }
    Ok(log_r_noon_real(n, eta).exp())
}

/// `ln R_NOON`, finite for every valid input.
pub fn log_r_noon(probe: NoonProbe, eta: f64) -> Result<f64> {
    check_eta(eta)?;
    Ok(log_r_noon_real(probe.n() as f64, eta))
}

/// `2 d ln R_NOON / dN = -ln(eta)/(1 + eta^N) - 1/N`, increasing in `N`.
fn d_log_r_noon_twice(n: f64, eta: f64) -> f64 {
    -eta.ln() / (1.0 + eta.powf(n)) - 1.0 / n
}

/// Photon number per state in `[1, N_T]` that minimizes `R_NOON`.
pub fn n_tilde_min_integer(eta: f64, b: &PhotonBudget) -> Result<u64> {
    check_eta(eta)?;
    if eta == 1.0 {
        return Ok(b.n_total);
    }
    let root = increasing_root(|n| d_log_r_noon_twice(n, eta), 1e-9, 4.0)?;
    Ok(best_adjacent_integer(root, b.n_total, |n| log_r_noon_real(n as f64, eta)))
}

/// Positive root of `nu~ = e^-nu~ + 1`.
pub fn solve_nu_tilde() -> f64 {
    bisect(|x| (-x).exp() + 1.0 - x, 1.0, 2.0, ROOT_TOL).expect("[1, 2] brackets the root")
}

/// `mu~ = sqrt((e^nu~ + 1) / (2 nu~))`.
pub fn mu_tilde() -> f64 {
    let nt = solve_nu_tilde();
    ((nt.exp() + 1.0) / (2.0 * nt)).sqrt()
}

/// Loss above which `R_NOON` increases with `N` at every integer:
/// `2 - sqrt 2`.
pub fn l_tilde_critical() -> f64 {
    2.0 - std::f64::consts::SQRT_2
}

/// Leading-order `dR_NOON/dN` as `eta -> 0`:
/// `-ln(eta) eta^{-(N-1)/2} / (2 sqrt(2N))`.
pub fn d_rnoon_dn_largeloss(n: f64, eta: f64) -> Result<f64> {
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::NonPositive(n));
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::InvalidEta(eta));
    }
    let ln_mag = (-eta.ln()).ln() - 0.5 * (n - 1.0) * eta.ln() - (2.0 * (2.0 * n).sqrt()).ln();
    Ok(ln_mag.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(n: u64) -> NoonProbe {
        NoonProbe::new(n).unwrap()
    }

    #[test]
    fn budget_domain() {
        assert!(PhotonBudget::new(0, 1.0).is_err());
        assert!(PhotonBudget::new(10, 0.0).is_err());
        assert!(PhotonBudget::new(10, f64::NAN).is_err());
        let b = PhotonBudget::with_total(10).unwrap();
        assert_eq!(b.kappa(), 1.0);
        assert_eq!(b.measurements(p(4)), 2.5);
    }

    #[test]
    fn unentangled_examples() {
        let b = PhotonBudget::with_total(100).unwrap();
        assert_relative_eq!(unentangled_precision(&b, 1.0).unwrap(), 0.1, max_relative = 1e-15);
        assert_relative_eq!(unentangled_precision(&b, 0.25).unwrap(), 0.2, max_relative = 1e-15);
        let b = PhotonBudget::new(400, 2.0).unwrap();
        assert_relative_eq!(unentangled_precision(&b, 0.5).unwrap(), 2.0 / 200f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn budgeted_examples() {
        let b = PhotonBudget::with_total(100).unwrap();
        assert_relative_eq!(noon_precision_budgeted(p(100), &b, 1.0).unwrap(), 0.01, max_relative = 1e-14);
        assert_relative_eq!(noon_precision_budgeted(p(1), &b, 1.0).unwrap(), 0.1, max_relative = 1e-14);
        assert_relative_eq!(
            noon_precision_budgeted(p(2), &b, 0.5).unwrap(),
            0.0125f64.sqrt(),
            max_relative = 1e-14
        );
        assert!(matches!(
            noon_precision_budgeted(p(101), &b, 0.5),
            Err(Error::ExceedsBudget { n: 101, n_total: 100 })
        ));
    }

    #[test]
    fn r_noon_examples() {
        assert_eq!(r_noon(p(4), 1.0).unwrap(), 0.5);
        assert_relative_eq!(r_noon(p(1), 0.5).unwrap(), 0.75f64.sqrt(), max_relative = 1e-14);
        let e = std::f64::consts::SQRT_2 - 1.0;
        assert!((r_noon(p(2), e).unwrap() - r_noon(p(1), e).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn n_tilde_examples() {
        let b = PhotonBudget::with_total(50).unwrap();
        assert_eq!(n_tilde_min_integer(1.0, &b).unwrap(), 50);
        assert_eq!(n_tilde_min_integer(0.01, &b).unwrap(), 1);
    }

    #[test]
    fn nu_tilde_and_mu_tilde() {
        let nt = solve_nu_tilde();
        // the quoted 1.279 is itself rounded up from 1.27846
        assert!((nt - 1.279).abs() < 1e-3);
        assert!((nt - (-nt).exp() - 1.0).abs() < 1e-11);
        let f = |x: f64| (-x).exp() + 1.0 - x;
        assert!(f(1.0) > 0.0 && f(2.0) < 0.0);
        assert!((mu_tilde() - 1.340).abs() < 5e-4);
        assert!(mu_tilde() > 1.0);
    }

    #[test]
    fn l_tilde_regimes() {
        assert!((l_tilde_critical() - 0.585_786).abs() < 1e-6);
        let r: Vec<f64> = (1..=500).map(|n| r_noon(p(n), 0.4).unwrap()).collect();
        assert!(r.windows(2).all(|w| w[1] > w[0]));
        assert!(r_noon(p(2), 0.5).unwrap() < r_noon(p(1), 0.5).unwrap());
    }

    #[test]
    fn largeloss_slope() {
        let v = d_rnoon_dn_largeloss(1.0, 0.01).unwrap();
        assert_relative_eq!(v, -(0.01f64.ln()) / (2.0 * 2f64.sqrt()), max_relative = 1e-14);
        assert!((1..=100).all(|n| d_rnoon_dn_largeloss(n as f64, 0.05).unwrap() > 0.0));
        assert!(d_rnoon_dn_largeloss(1.0, 1.0).is_err());
    }
}

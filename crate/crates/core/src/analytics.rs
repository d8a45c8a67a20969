//! Closed-form detection statistics for a NOON probe behind a lossy
//! beam splitter in one arm.
//!
//! Every quantity that involves `eta^-N` is routed through
//! `x = -N ln(eta) >= 0` so that large photon numbers stay finite in the
//! log domain.

use crate::error::{Error, Result};

/// Above this value of `N |ln eta|` the linear-domain forms switch to the
/// log-domain evaluation.
pub const LOG_DOMAIN_THRESHOLD: f64 = 500.0;

/// `|sin(N(phi0 + theta_t))|` below this is treated as a blind operating point.
pub const DEGENERACY_TOL: f64 = 1e-14;

/// Single-mode loss modeled as a beam splitter with intensity transmission
/// `eta` and transmission phase `theta_t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossChannel {
    eta: f64,
    theta_t: f64,
}

impl LossChannel {
    pub fn new(eta: f64, theta_t: f64) -> Result<Self> {
        check_eta(eta)?;
        if !theta_t.is_finite() {
            return Err(Error::InvalidPhase(theta_t));
        }
        Ok(Self { eta, theta_t })
    }

    /// Pure loss: real transmission coefficient.
    pub fn pure(eta: f64) -> Result<Self> {
        Self::new(eta, 0.0)
    }

    /// Channel with loss `L = 1 - eta`, `0 <= L < 1`.
    pub fn from_loss(loss: f64, theta_t: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&loss) {
            return Err(Error::InvalidLoss(loss));
        }
        Self::new(1.0 - loss, theta_t)
    }

    pub fn lossless() -> Self {
        Self { eta: 1.0, theta_t: 0.0 }
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn theta_t(&self) -> f64 {
        self.theta_t
    }

    pub fn loss(&self) -> f64 {
        1.0 - self.eta
    }
}

impl Default for LossChannel {
    fn default() -> Self {
        Self::lossless()
    }
}

/// Photon number of a single NOON state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NoonProbe(u64);

impl NoonProbe {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroPhotons);
        }
        Ok(Self(n))
    }

    pub fn n(self) -> u64 {
        self.0
    }

    fn nf(self) -> f64 {
        self.0 as f64
    }
}

/// Operating phase `phi0` and the small phase change `delta_phi` to detect.
///
/// The small-signal SNR assumes `|delta_phi| << 2 pi`; this is not enforced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    pub phi0: f64,
    pub delta_phi: f64,
}

impl OperatingPoint {
    pub fn new(phi0: f64, delta_phi: f64) -> Result<Self> {
        for v in [phi0, delta_phi] {
            if !v.is_finite() {
                return Err(Error::InvalidPhase(v));
            }
        }
        Ok(Self { phi0, delta_phi })
    }
}

/// Small-signal SNR together with a flag for operating points where the
/// signal slope vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrOutcome {
    pub snr: f64,
    pub degenerate: bool,
}

/// Detection statistics at one `(N, channel, operating point)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionReport {
    pub mean: f64,
    pub variance: f64,
    pub snr: f64,
    pub min_phase: f64,
    pub log_min_phase: f64,
    pub degenerate: bool,
}

pub(crate) fn check_eta(eta: f64) -> Result<()> {
    if eta > 0.0 && eta <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidTransmissivity(eta))
    }
}

fn check_positive(v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositive(v))
    }
}

/// `x = -N ln eta`, the exponent of `eta^-N`.
#[inline]
pub(crate) fn loss_exponent(n: f64, eta: f64) -> f64 {
    -n * eta.ln()
}

/// `ln((e^x + 1) / 2)` for `x >= 0` without overflow.
pub(crate) fn ln_half_one_plus_exp(x: f64) -> f64 {
    if x < 1.0 {
        (0.5 * x.exp_m1()).ln_1p()
    } else {
        x + (-x).exp().ln_1p() - std::f64::consts::LN_2
    }
}

/// Phase argument `N (phi + theta_t)`.
#[inline]
fn phase_arg(probe: NoonProbe, ch: &LossChannel, phi: f64) -> f64 {
    probe.nf() * (phi + ch.theta_t)
}

/// `<A'_N> = eta^{N/2} cos(N(phi + theta_t))`.
pub fn mean_detection(probe: NoonProbe, ch: &LossChannel, phi: f64) -> f64 {
    ch.eta.powf(0.5 * probe.nf()) * phase_arg(probe, ch, phi).cos()
}

/// `Var A'_N = (1 + eta^N)/2 - eta^N cos^2(N(phi + theta_t))`.
pub fn variance_detection(probe: NoonProbe, ch: &LossChannel, phi: f64) -> f64 {
    let eta_n = ch.eta.powf(probe.nf());
    let c = phase_arg(probe, ch, phi).cos();
    0.5 * (1.0 + eta_n) - eta_n * c * c
}

/// `(eta^-N + 1)/2 - cos^2`, written as `expm1(x)/2 + sin^2` to stay accurate
/// near `eta = 1`.
fn snr_denominator(x: f64, sin: f64) -> f64 {
    0.5 * x.exp_m1() + sin * sin
}

fn ln_snr_denominator(x: f64, sin: f64) -> f64 {
    if x <= LOG_DOMAIN_THRESHOLD {
        snr_denominator(x, sin).ln()
    } else {
        x - std::f64::consts::LN_2 + ((-x).exp() * (2.0 * sin * sin - 1.0)).ln_1p()
    }
}

/// Small-signal SNR for detecting `op.delta_phi` about `op.phi0`.
///
/// Blind operating points (`sin(N(phi0 + theta_t)) = 0`) yield zero with the
/// degeneracy flag set.
pub fn snr_lossy(probe: NoonProbe, ch: &LossChannel, op: OperatingPoint) -> SnrOutcome {
    let n = probe.nf();
    let s = phase_arg(probe, ch, op.phi0).sin();
    if s.abs() < DEGENERACY_TOL {
        return SnrOutcome { snr: 0.0, degenerate: true };
    }
    let x = loss_exponent(n, ch.eta);
    let numer = n * n * s * s * op.delta_phi * op.delta_phi;
    let snr = if x <= LOG_DOMAIN_THRESHOLD {
        numer / snr_denominator(x, s)
    } else {
        (numer.ln() - ln_snr_denominator(x, s)).exp()
    };
    SnrOutcome { snr, degenerate: false }
}

/// Natural log of [`min_phase_at`]; `+inf` at blind operating points.
pub fn log_min_phase_at(probe: NoonProbe, ch: &LossChannel, phi0: f64) -> f64 {
    let n = probe.nf();
    let s = phase_arg(probe, ch, phi0).sin();
    if s.abs() < DEGENERACY_TOL {
        return f64::INFINITY;
    }
    let x = loss_exponent(n, ch.eta);
    0.5 * ln_snr_denominator(x, s) - n.ln() - s.abs().ln()
}

/// Minimum detectable phase change (SNR of one) at operating phase `phi0`.
pub fn min_phase_at(probe: NoonProbe, ch: &LossChannel, phi0: f64) -> f64 {
    let n = probe.nf();
    let s = phase_arg(probe, ch, phi0).sin();
    if s.abs() < DEGENERACY_TOL {
        return f64::INFINITY;
    }
    let x = loss_exponent(n, ch.eta);
    if x <= LOG_DOMAIN_THRESHOLD {
        snr_denominator(x, s).sqrt() / (n * s.abs())
    } else {
        log_min_phase_at(probe, ch, phi0).exp()
    }
}

pub(crate) fn log_min_phase_opt_real(n: f64, eta: f64) -> f64 {
    0.5 * ln_half_one_plus_exp(loss_exponent(n, eta)) - n.ln()
}

pub(crate) fn min_phase_opt_real(n: f64, eta: f64) -> f64 {
    let x = loss_exponent(n, eta);
    if x <= LOG_DOMAIN_THRESHOLD {
        (0.5 * (x.exp() + 1.0)).sqrt() / n
    } else {
        log_min_phase_opt_real(n, eta).exp()
    }
}

/// Minimum detectable phase at the optimal operating phase with `theta_t = 0`:
/// `sqrt((eta^-N + 1)/2) / N`.
///
/// Overflows to `+inf` once the result leaves the `f64` range.
pub fn min_phase_opt(probe: NoonProbe, eta: f64) -> Result<f64> {
    check_eta(eta)?;
    Ok(min_phase_opt_real(probe.nf(), eta))
}

/// `ln` of [`min_phase_opt`], finite for every valid input.
pub fn log_min_phase_opt(probe: NoonProbe, eta: f64) -> Result<f64> {
    check_eta(eta)?;
    Ok(log_min_phase_opt_real(probe.nf(), eta))
}

pub(crate) fn d_log_precision_dn_unchecked(n: f64, eta: f64) -> f64 {
    -1.0 / n - eta.ln() / (2.0 * (eta.powf(n) + 1.0))
}

/// Derivative of [`min_phase_opt`] with `N` treated as continuous.
pub fn d_precision_dn(n_real: f64, eta: f64) -> Result<f64> {
    check_positive(n_real)?;
    check_eta(eta)?;
    let x = loss_exponent(n_real, eta);
    if x <= LOG_DOMAIN_THRESHOLD {
        let f = x.exp();
        let s = (0.5 * (f + 1.0)).sqrt();
        Ok(-s / (n_real * n_real) - f * eta.ln() / (4.0 * n_real * s))
    } else {
        Ok(min_phase_opt_real(n_real, eta) * d_log_precision_dn_unchecked(n_real, eta))
    }
}

/// `d/dN ln(min_phase_opt) = -1/N - ln(eta) / (2 (eta^N + 1))`.
///
/// Strictly increasing in `N` for `eta < 1`; its root is the continuous
/// minimizer.
pub fn d_log_precision_dn(n_real: f64, eta: f64) -> Result<f64> {
    check_positive(n_real)?;
    check_eta(eta)?;
    Ok(d_log_precision_dn_unchecked(n_real, eta))
}

/// Bundle every closed-form statistic at one point.
pub fn precision_report(probe: NoonProbe, ch: &LossChannel, op: OperatingPoint) -> PrecisionReport {
    let snr = snr_lossy(probe, ch, op);
    PrecisionReport {
        mean: mean_detection(probe, ch, op.phi0),
        variance: variance_detection(probe, ch, op.phi0),
        snr: snr.snr,
        min_phase: min_phase_at(probe, ch, op.phi0),
        log_min_phase: log_min_phase_at(probe, ch, op.phi0),
        degenerate: snr.degenerate,
    }
}

/// Operating phase `phi0` that puts `N(phi0 + theta_t)` at `pi/2`.
pub fn optimal_phase(probe: NoonProbe, ch: &LossChannel) -> f64 {
    std::f64::consts::FRAC_PI_2 / probe.nf() - ch.theta_t
}

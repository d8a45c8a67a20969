//! One function per subcommand, each returning a [`Report`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::{PI, TAU};

use noonloss::analytics::optimal_phase;
use noonloss::fock_oracle::{detector_moments, DetectorNormalization, ReflectionPhase};
use noonloss::{
    eta_critical, l_tilde_critical, log_min_phase_opt, log_r_noon, loss_critical,
    mean_detection, min_phase_opt, mu_from_nu, mu_tilde, n_min_integer, n_tilde_min_integer,
    noon_precision_budgeted, precision_report, r_noon, solve_nu, solve_nu_tilde,
    unentangled_precision, variance_detection, LossChannel, LossyDetector, NoonProbe,
    OperatingPoint, PhotonBudget,
};

use crate::error::CliError;
use crate::output::{Record, Report};

/// Largest tolerated oracle/closed-form deviation before `verify` fails.
pub const VERIFY_TOL: f64 = 1e-10;

/// Significant digits in the text rendering of `constants`.
pub const CONSTANT_DIGITS: usize = 9;

pub fn constants() -> Report {
    let nu = solve_nu();
    let mu = mu_from_nu(nu).expect("nu > 0");
    let eta_c = eta_critical();
    let l_c = loss_critical();
    let nu_t = solve_nu_tilde();
    let mu_t = mu_tilde();
    let lt_c = l_tilde_critical();
    let eta_tc = 1.0 - lt_c;

    let mut r = Record::new().with_text_style(CONSTANT_DIGITS, "≈");
    r.put("nu", nu)
        .put("mu", mu)
        .put("eta_c", eta_c)
        .put("L_c", l_c)
        .put("nu_tilde", nu_t)
        .put("mu_tilde", mu_t)
        .put("L_tilde_c", lt_c)
        // nu = 2(e^-nu + 1)
        .put("nu_residual", (nu - 2.0 * ((-nu).exp() + 1.0)).abs())
        .put("mu_residual", (mu - (0.5 * (nu.exp() + 1.0)).sqrt() / nu).abs())
        // one- and two-photon tie: 3 eta^2 + 4 eta - 1 = 0
        .put("eta_c_residual", (3.0 * eta_c * eta_c + 4.0 * eta_c - 1.0).abs())
        .put("L_c_residual", (l_c + eta_c - 1.0).abs())
        .put("nu_tilde_residual", (nu_t - (-nu_t).exp() - 1.0).abs())
        .put("mu_tilde_residual", (mu_t - ((nu_t.exp() + 1.0) / (2.0 * nu_t)).sqrt()).abs())
        // budgeted tie: eta^2 + 2 eta - 1 = 0
        .put("L_tilde_c_residual", (eta_tc * eta_tc + 2.0 * eta_tc - 1.0).abs());
    Report::Record(r)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionQuery {
    pub n: u64,
    pub channel: LossChannel,
    /// `None` picks the optimal operating phase.
    pub phi0: Option<f64>,
    pub delta_phi: f64,
    pub budget: Option<PhotonBudget>,
}

pub fn precision(q: &PrecisionQuery) -> Result<Report, CliError> {
    let probe = NoonProbe::new(q.n)?;
    let ch = q.channel;
    let phi0 = q.phi0.unwrap_or_else(|| optimal_phase(probe, &ch));
    let op = OperatingPoint::new(phi0, q.delta_phi)?;
    let rep = precision_report(probe, &ch, op);

    let mut r = Record::new();
    r.put("n", q.n)
        .put("eta", ch.eta())
        .put("loss", ch.loss())
        .put("theta_t", ch.theta_t())
        .put("phi0", phi0)
        .put("delta_phi", q.delta_phi)
        .put("mean", rep.mean)
        .put("variance", rep.variance)
        .put("snr", rep.snr)
        .put("degenerate", rep.degenerate)
        .put("min_phase", rep.min_phase)
        .put("log_min_phase", rep.log_min_phase)
        .put("min_phase_opt", min_phase_opt(probe, ch.eta())?)
        .put("log_min_phase_opt", log_min_phase_opt(probe, ch.eta())?)
        .put("r_noon", r_noon(probe, ch.eta())?);
    if let Some(b) = q.budget {
        let m = b.measurements(probe);
        r.put("n_total", b.n_total())
            .put("kappa", b.kappa())
            .put("measurements", m)
            .put("measurements_rounded", m.round() as u64)
            .put("delta_phi_noon", noon_precision_budgeted(probe, &b, ch.eta())?)
            .put("delta_phi_un", unentangled_precision(&b, ch.eta())?);
    }
    Ok(Report::Record(r))
}

fn rel_dev(approx: f64, exact: f64) -> f64 {
    (approx - exact) / exact
}

pub fn optimize(eta: f64, budget: Option<PhotonBudget>, n_cap: u64) -> Result<Report, CliError> {
    let mut r = Record::new();
    let loss = 1.0 - eta;
    r.put("eta", eta).put("loss", loss);

    if budget.is_none() || eta < 1.0 {
        let opt = n_min_integer(eta, n_cap)?;
        r.put("n_star", opt.n_star)
            .put("precision_at_opt", opt.precision_at_opt)
            .put("continuous_n", opt.continuous_n)
            .put("asymptotic_n", opt.asymptotic_n)
            .put("asymptotic_precision", opt.asymptotic_precision)
            .put("asymptotic_n_rel_dev", rel_dev(opt.asymptotic_n, opt.n_star as f64))
            .put("asymptotic_precision_rel_dev", rel_dev(opt.asymptotic_precision, opt.precision_at_opt))
            .put("regime", if loss > loss_critical() { "L > L_c" } else { "L <= L_c" });
    }

    if let Some(b) = budget {
        let n = n_tilde_min_integer(eta, &b)?;
        let probe = NoonProbe::new(n)?;
        let prec = noon_precision_budgeted(probe, &b, eta)?;
        r.put("n_total", b.n_total())
            .put("kappa", b.kappa())
            .put("n_tilde_star", n)
            .put("measurements", b.measurements(probe))
            .put("r_noon_at_opt", r_noon(probe, eta)?)
            .put("delta_phi_noon", prec)
            .put("delta_phi_un", unentangled_precision(&b, eta)?);
        if eta < 1.0 {
            let n_asym = solve_nu_tilde() / loss;
            let p_asym = mu_tilde() * (loss / b.n_total() as f64).sqrt();
            r.put("asymptotic_n_tilde", n_asym)
                .put("asymptotic_n_tilde_rounded", n_asym.round() as u64)
                .put("asymptotic_budget_precision", p_asym)
                .put("asymptotic_n_tilde_rel_dev", rel_dev(n_asym, n as f64))
                .put("asymptotic_budget_precision_rel_dev", rel_dev(p_asym, prec));
        }
        r.put(
            "budget_regime",
            if loss > l_tilde_critical() { "L > L_tilde_c" } else { "L <= L_tilde_c" },
        );
    }
    Ok(Report::Record(r))
}

/// Budget comparison at a given per-state photon number, plus the optimum.
pub fn budget(eta: f64, b: PhotonBudget, n: Option<u64>) -> Result<Report, CliError> {
    let mut r = Record::new();
    r.put("eta", eta)
        .put("loss", 1.0 - eta)
        .put("n_total", b.n_total())
        .put("kappa", b.kappa())
        .put("delta_phi_un", unentangled_precision(&b, eta)?);
    if let Some(n) = n {
        let probe = NoonProbe::new(n)?;
        let m = b.measurements(probe);
        r.put("n", n)
            .put("measurements", m)
            .put("measurements_rounded", m.round() as u64)
            .put("r_noon", r_noon(probe, eta)?)
            .put("log_r_noon", log_r_noon(probe, eta)?)
            .put("delta_phi_noon", noon_precision_budgeted(probe, &b, eta)?);
    }
    let best = n_tilde_min_integer(eta, &b)?;
    let bp = NoonProbe::new(best)?;
    r.put("n_tilde_star", best)
        .put("r_noon_at_opt", r_noon(bp, eta)?)
        .put("delta_phi_noon_at_opt", noon_precision_budgeted(bp, &b, eta)?);
    Ok(Report::Record(r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Grid {
    #[default]
    Fast,
    Dense,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub max_n: u64,
    pub grid: Grid,
    pub seed: u64,
    /// Restrict the grid to one transmissivity.
    pub eta: Option<f64>,
    /// Swap in the wrong `1/sqrt(N)` prefactor.
    pub corrupt_prefactor: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { max_n: 12, grid: Grid::Fast, seed: 0, eta: None, corrupt_prefactor: false }
    }
}

/// Random off-grid samples per photon number.
const RANDOM_SAMPLES: usize = 32;

struct Deviation {
    points: usize,
    mean: f64,
    variance: f64,
}

fn verify_n(n: u64, opts: &VerifyOptions) -> Result<Deviation, CliError> {
    let (etas, thetas, phases): (Vec<f64>, Vec<f64>, usize) = match opts.grid {
        Grid::Fast => ((1..=10).map(|k| k as f64 / 10.0).collect(), vec![0.0, 0.37], 16),
        Grid::Dense => ((1..=20).map(|k| k as f64 / 20.0).collect(), vec![0.0, 0.37, -1.2], 64),
    };
    let etas = opts.eta.map(|e| vec![e]).unwrap_or(etas);
    let mut samples: Vec<(f64, f64, f64)> = Vec::new();
    for &eta in &etas {
        for &theta in &thetas {
            for k in 0..phases {
                samples.push((eta, theta, k as f64 * TAU / phases as f64));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ n.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    for _ in 0..RANDOM_SAMPLES {
        let eta = opts.eta.unwrap_or_else(|| 1.0 - rng.gen_range(0.0..1.0));
        samples.push((eta, rng.gen_range(-PI..PI), rng.gen_range(0.0..TAU)));
    }

    let normalization = if opts.corrupt_prefactor {
        DetectorNormalization::SqrtN
    } else {
        DetectorNormalization::Factorial
    };
    let probe = NoonProbe::new(n)?;
    let mut dev = Deviation { points: 0, mean: 0.0, variance: 0.0 };
    for (eta, theta, phi) in samples {
        let ch = LossChannel::new(eta, theta)?;
        let det = LossyDetector::with_conventions(n, &ch, ReflectionPhase::Imaginary, normalization)?;
        let m = detector_moments(&det, phi)?;
        dev.mean = dev.mean.max((m.mean - mean_detection(probe, &ch, phi)).abs());
        dev.variance = dev.variance.max((m.variance - variance_detection(probe, &ch, phi)).abs());
        dev.points += 1;
    }
    Ok(dev)
}

/// Runs the oracle comparison. Returns the report and whether it passed.
pub fn verify(opts: &VerifyOptions) -> Result<(Report, bool), CliError> {
    if opts.max_n == 0 || opts.max_n > noonloss::fock_oracle::ORACLE_MAX_N {
        return Err(CliError::usage(format!(
            "--max-n must lie in 1..={}",
            noonloss::fock_oracle::ORACLE_MAX_N
        )));
    }
    if let Some(e) = opts.eta {
        LossChannel::pure(e)?;
    }
    let devs: Vec<Deviation> =
        (1..=opts.max_n).into_par_iter().map(|n| verify_n(n, opts)).collect::<Result<_, _>>()?;
    let points: usize = devs.iter().map(|d| d.points).sum();
    let max_mean = devs.iter().map(|d| d.mean).fold(0.0, f64::max);
    let max_var = devs.iter().map(|d| d.variance).fold(0.0, f64::max);
    let max_dev = max_mean.max(max_var);
    let passed = max_dev <= VERIFY_TOL;

    let mut r = Record::new();
    r.put("max_n", opts.max_n)
        .put("grid", match opts.grid {
            Grid::Fast => "fast",
            Grid::Dense => "dense",
        })
        .put("seed", opts.seed)
        .put("points", points as u64)
        .put("max_mean_dev", max_mean)
        .put("max_variance_dev", max_var)
        .put("max_dev", max_dev)
        .put("tolerance", VERIFY_TOL)
        .put("status", if passed { "pass" } else { "fail" });
    Ok((Report::Record(r), passed))
}

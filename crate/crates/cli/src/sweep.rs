//! Parameter sweeps and the figure reproductions built on them.

use rayon::prelude::*;

use noonloss::analytics::optimal_phase;
use noonloss::{
    log_min_phase_opt, min_phase_opt, precision_report, r_noon, solve_nu, LossChannel, NoonProbe,
    OperatingPoint,
};

use crate::error::CliError;
use crate::output::{Table, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Variable {
    N,
    Eta,
    #[value(name = "loss", alias = "L")]
    Loss,
    Phi0,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

/// Parameters held fixed while one variable is swept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fixed {
    pub n: u64,
    pub eta: f64,
    pub theta_t: f64,
    /// `None` selects the optimal operating phase at each point.
    pub phi0: Option<f64>,
    pub delta_phi: f64,
}

impl Default for Fixed {
    fn default() -> Self {
        Self { n: 1, eta: 1.0, theta_t: 0.0, phi0: None, delta_phi: 1e-3 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: Variable,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub scale: Scale,
    pub fixed: Fixed,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.start.is_finite() && self.stop.is_finite()) || self.start >= self.stop {
            return Err(CliError::usage("sweep requires finite start < stop"));
        }
        if self.steps < 2 {
            return Err(CliError::usage("sweep requires at least 2 steps"));
        }
        if self.scale == Scale::Log && self.start <= 0.0 {
            return Err(CliError::usage("log-scaled sweep requires start > 0"));
        }
        if self.variable == Variable::N && self.start < 1.0 {
            return Err(CliError::usage("photon-number sweep must start at N >= 1"));
        }
        Ok(())
    }

    /// Grid points; photon-number sweeps are rounded and deduplicated.
    pub fn points(&self) -> Vec<f64> {
        let k = (self.steps - 1) as f64;
        let raw = (0..self.steps).map(|i| {
            let s = i as f64 / k;
            match self.scale {
                Scale::Linear => self.start + s * (self.stop - self.start),
                Scale::Log => (self.start.ln() + s * (self.stop.ln() - self.start.ln())).exp(),
            }
        });
        if self.variable == Variable::N {
            let mut v: Vec<f64> = raw.map(f64::round).collect();
            v.dedup();
            v
        } else {
            raw.collect()
        }
    }
}

pub const SWEEP_COLUMNS: [&str; 12] = [
    "n",
    "eta",
    "loss",
    "theta_t",
    "phi0",
    "mean",
    "variance",
    "snr",
    "min_phase",
    "log_min_phase",
    "min_phase_opt",
    "r_noon",
];

fn sweep_row(spec: &SweepSpec, x: f64) -> Result<Vec<Value>, CliError> {
    let mut f = spec.fixed;
    match spec.variable {
        Variable::N => f.n = x as u64,
        Variable::Eta => f.eta = x,
        Variable::Loss => f.eta = 1.0 - x,
        Variable::Phi0 => f.phi0 = Some(x),
    }
    let probe = NoonProbe::new(f.n)?;
    let ch = LossChannel::new(f.eta, f.theta_t)?;
    let phi0 = f.phi0.unwrap_or_else(|| optimal_phase(probe, &ch));
    let rep = precision_report(probe, &ch, OperatingPoint::new(phi0, f.delta_phi)?);
    Ok(vec![
        Value::Int(f.n as i64),
        f.eta.into(),
        (1.0 - f.eta).into(),
        f.theta_t.into(),
        phi0.into(),
        rep.mean.into(),
        rep.variance.into(),
        rep.snr.into(),
        rep.min_phase.into(),
        rep.log_min_phase.into(),
        min_phase_opt(probe, f.eta)?.into(),
        r_noon(probe, f.eta)?.into(),
    ])
}

/// Evaluates every grid point in parallel; rows keep grid order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Table, CliError> {
    spec.validate()?;
    let rows: Vec<Vec<Value>> =
        spec.points().par_iter().map(|&x| sweep_row(spec, x)).collect::<Result<_, _>>()?;
    let mut t = Table::new(SWEEP_COLUMNS);
    for r in rows {
        t.push(r);
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Single-measurement precision against the `1/sqrt(2 eta N)` line.
    Precision,
    /// `R_NOON` against `N`.
    Ratio,
}

/// Photon-number grid used by the figure sweeps when none is given: every
/// integer up to 50 for large loss, otherwise log spacing out to a few times
/// the small-loss optimum, far enough to cross the `1/sqrt(2 eta N)` line.
pub fn default_figure_grid(eta: f64) -> (f64, f64, usize, Scale) {
    let loss = 1.0 - eta;
    if loss >= 0.1 {
        (1.0, 50.0, 50, Scale::Linear)
    } else {
        let stop = (10.0 * solve_nu() / loss.max(1e-12)).clamp(50.0, 1e12).round();
        (1.0, stop, 2000, Scale::Log)
    }
}

pub fn run_figure(fig: Figure, spec: &SweepSpec) -> Result<Table, CliError> {
    spec.validate()?;
    if spec.variable != Variable::N {
        return Err(CliError::usage("figure sweeps run over N"));
    }
    let eta = spec.fixed.eta;
    LossChannel::pure(eta)?;
    let rows: Vec<Vec<Value>> = spec
        .points()
        .par_iter()
        .map(|&x| -> Result<Vec<Value>, CliError> {
            let probe = NoonProbe::new(x as u64)?;
            Ok(match fig {
                Figure::Precision => {
                    // exp of the log form keeps huge values finite as long as possible
                    let lin = min_phase_opt(probe, eta)?;
                    let prec = if lin.is_finite() { lin } else { log_min_phase_opt(probe, eta)?.exp() };
                    vec![
                        Value::Int(probe.n() as i64),
                        prec.into(),
                        (1.0 / (2.0 * eta * x).sqrt()).into(),
                    ]
                }
                Figure::Ratio => vec![Value::Int(probe.n() as i64), r_noon(probe, eta)?.into()],
            })
        })
        .collect::<Result<_, _>>()?;
    let mut t = match fig {
        Figure::Precision => Table::new(["N", "delta_phi_min", "sql_reference"]),
        Figure::Ratio => Table::new(["N", "R_NOON"]),
    };
    for r in rows {
        t.push(r);
    }
    Ok(t)
}

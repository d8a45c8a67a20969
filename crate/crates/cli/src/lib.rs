//! Command-line front end for the `noonloss` library.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod sweep;

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand};

use noonloss::{LossChannel, PhotonBudget, DEFAULT_N_CAP};

use commands::{Grid, PrecisionQuery, VerifyOptions};
use error::{CliError, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};
use output::{Format, Report};
use sweep::{Figure, Fixed, Scale, SweepSpec, Variable};

#[derive(Debug, Parser)]
#[command(name = "noonloss", version, about = "NOON-state phase precision under photon loss")]
pub struct Cli {
    /// Output format; tables default to csv, single reports to text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// key=value preset file; command-line flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ChannelArgs {
    /// Transmissivity, 0 < eta <= 1.
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<f64>,
    /// Loss L = 1 - eta.
    #[arg(long, conflicts_with = "eta", allow_hyphen_values = true)]
    pub loss: Option<f64>,
    /// Phase of the transmission amplitude.
    #[arg(long = "theta-t", default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta_t: f64,
}

impl ChannelArgs {
    pub fn channel(&self) -> Result<Option<LossChannel>, CliError> {
        Ok(match (self.eta, self.loss) {
            (Some(e), None) => Some(LossChannel::new(e, self.theta_t)?),
            (None, Some(l)) => Some(LossChannel::from_loss(l, self.theta_t)?),
            (None, None) => None,
            (Some(_), Some(_)) => return Err(CliError::usage("give --eta or --loss, not both")),
        })
    }

    pub fn require(&self) -> Result<LossChannel, CliError> {
        self.channel()?.ok_or_else(|| CliError::usage("one of --eta or --loss is required"))
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct BudgetArgs {
    /// Total photon budget N_T.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Baseline scale factor.
    #[arg(long, default_value_t = 1.0)]
    pub kappa: f64,
}

impl BudgetArgs {
    pub fn budget(&self) -> Result<Option<PhotonBudget>, CliError> {
        self.budget.map(|nt| PhotonBudget::new(nt, self.kappa).map_err(CliError::from)).transpose()
    }
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Solve for the loss constants and thresholds.
    Constants,
    /// Mean, variance, SNR and minimum detectable phase at one point.
    Precision {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        channel: ChannelArgs,
        /// Operating phase; defaults to the optimal one.
        #[arg(long, allow_hyphen_values = true)]
        phi0: Option<f64>,
        #[arg(long, default_value_t = 1e-3)]
        dphi: f64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Sweep one parameter, or emit figure data.
    Sweep {
        #[arg(long, value_enum, default_value = "n")]
        var: Variable,
        #[arg(long, allow_hyphen_values = true)]
        from: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        to: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, value_enum)]
        scale: Option<Scale>,
        /// Photon number held fixed when sweeping another variable.
        #[arg(long, default_value_t = 1)]
        n: u64,
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long, allow_hyphen_values = true)]
        phi0: Option<f64>,
        #[arg(long, default_value_t = 1e-3)]
        dphi: f64,
        /// Precision against N with the 1/sqrt(2 eta N) reference.
        #[arg(long, conflicts_with = "fig3")]
        fig2: bool,
        /// R_NOON against N.
        #[arg(long)]
        fig3: bool,
        /// Comma-separated subset of output columns.
        #[arg(long, value_delimiter = ',')]
        columns: Option<Vec<String>>,
    },
    /// Optimal photon number, with or without a photon budget.
    Optimize {
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Upper limit on the photon-number search.
        #[arg(long = "n-cap", default_value_t = DEFAULT_N_CAP)]
        n_cap: u64,
    },
    /// Budgeted NOON against unentangled precision.
    Budget {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long)]
        budget: u64,
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        #[arg(long)]
        n: Option<u64>,
    },
    /// Compare the Fock-space oracle with the closed forms.
    Verify {
        #[arg(long = "max-n", default_value_t = 12)]
        max_n: u64,
        #[arg(long, value_enum, default_value = "fast")]
        grid: Grid,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restrict to one transmissivity.
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long, conflicts_with = "eta")]
        loss: Option<f64>,
        #[arg(long = "corrupt-prefactor", hide = true)]
        corrupt_prefactor: bool,
    },
}

/// A rendered report and whether the run counts as a success.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub passed: bool,
}

pub fn execute(cmd: Cmd) -> Result<Outcome, CliError> {
    let ok = |report| Ok(Outcome { report, passed: true });
    match cmd {
        Cmd::Constants => ok(commands::constants()),
        Cmd::Precision { n, channel, phi0, dphi, budget } => ok(commands::precision(&PrecisionQuery {
            n,
            channel: channel.require()?,
            phi0,
            delta_phi: dphi,
            budget: budget.budget()?,
        })?),
        Cmd::Sweep { var, from, to, steps, scale, n, channel, phi0, dphi, fig2, fig3, columns } => {
            let ch = channel.channel()?;
            let fixed = Fixed {
                n,
                eta: ch.map_or(1.0, |c| c.eta()),
                theta_t: channel.theta_t,
                phi0,
                delta_phi: dphi,
            };
            let table = if fig2 || fig3 {
                let ch = ch.ok_or_else(|| CliError::usage("figure sweeps need --eta or --loss"))?;
                if var != Variable::N {
                    return Err(CliError::usage("figure sweeps run over N"));
                }
                let (s0, s1, k, sc) = sweep::default_figure_grid(ch.eta());
                let spec = SweepSpec {
                    variable: Variable::N,
                    start: from.unwrap_or(s0),
                    stop: to.unwrap_or(s1),
                    steps: steps.unwrap_or(k),
                    scale: scale.unwrap_or(sc),
                    fixed,
                };
                sweep::run_figure(if fig2 { Figure::Precision } else { Figure::Ratio }, &spec)?
            } else {
                let (Some(start), Some(stop)) = (from, to) else {
                    return Err(CliError::usage("sweep needs --from and --to (or --fig2/--fig3)"));
                };
                let spec = SweepSpec {
                    variable: var,
                    start,
                    stop,
                    steps: steps.unwrap_or(50),
                    scale: scale.unwrap_or_default(),
                    fixed,
                };
                sweep::run_sweep(&spec)?
            };
            let table = match columns {
                Some(c) => table.select(&c).map_err(CliError::Usage)?,
                None => table,
            };
            ok(Report::Table(table))
        }
        Cmd::Optimize { channel, budget, n_cap } => {
            ok(commands::optimize(channel.require()?.eta(), budget.budget()?, n_cap)?)
        }
        Cmd::Budget { channel, budget, kappa, n } => {
            let b = PhotonBudget::new(budget, kappa)?;
            ok(commands::budget(channel.require()?.eta(), b, n)?)
        }
        Cmd::Verify { max_n, grid, seed, eta, loss, corrupt_prefactor } => {
            let eta = match (eta, loss) {
                (_, Some(l)) => Some(LossChannel::from_loss(l, 0.0)?.eta()),
                (e, None) => e,
            };
            let opts = VerifyOptions { max_n, grid, seed, eta, corrupt_prefactor };
            let (report, passed) = commands::verify(&opts)?;
            Ok(Outcome { report, passed })
        }
    }
}

fn default_format(r: &Report) -> Format {
    match r {
        Report::Table(_) => Format::Csv,
        Report::Record(_) => Format::Text,
    }
}

/// Parses `args` (including the program name) after merging any config
/// file, runs the command and writes the output. Returns the exit status.
pub fn run(args: Vec<String>) -> i32 {
    let merged = match config::config_path(&args) {
        Some(p) => config::Config::load(p.as_ref()).and_then(|c| config::merge(&Cli::command(), &args, &c)),
        None => Ok(args),
    };
    let merged = match merged {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(merged) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let format = cli.format;
    let out = cli.out.clone();
    let outcome = match execute(cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let text = outcome.report.render(format.unwrap_or_else(|| default_format(&outcome.report)));
    let written = match &out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let e = CliError::from(e);
        eprintln!("error: {e}");
        return e.exit_code();
    }
    if outcome.passed {
        EXIT_OK
    } else {
        eprintln!("error: verification failed");
        EXIT_VERIFY_FAILED
    }
}

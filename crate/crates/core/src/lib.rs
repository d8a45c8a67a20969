//! Phase-measurement precision of NOON states when one arm suffers photon
//! loss.
//!
//! - [`analytics`]: closed-form mean, variance, SNR and minimum detectable
//!   phase of the NOON detection operator behind a lossy beam splitter.
//! - [`fock_oracle`]: the same moments computed by brute force in an explicit
//!   three-mode Fock basis, used to cross-check the closed forms.
//! - [`optimal_search`]: optimal photon number for a single measurement and
//!   the constants that govern it.
//! - [`budget`]: repeated measurements with a fixed total photon budget.

pub mod analytics;
pub mod budget;
pub mod error;
pub mod fock_oracle;
pub mod optimal_search;
pub mod roots;

pub use analytics::{
    d_log_precision_dn, d_precision_dn, log_min_phase_at, log_min_phase_opt, mean_detection,
    min_phase_at, min_phase_opt, optimal_phase, precision_report, snr_lossy, variance_detection,
    LossChannel, NoonProbe, OperatingPoint, PrecisionReport, SnrOutcome,
};
pub use budget::{
    d_rnoon_dn_largeloss, l_tilde_critical, log_r_noon, mu_tilde, n_tilde_min_integer,
    noon_precision_budgeted, r_noon, solve_nu_tilde, unentangled_precision, PhotonBudget,
};
pub use error::{Error, Result};
pub use fock_oracle::{
    apply_detector, build_noon_input, inner, oracle_moments, FockKet, LossyDetector, Occupation,
    OracleMoments,
};
pub use optimal_search::{
    asymptotic_optimum, eta_critical, loss_critical, mu, mu_from_nu, n_min_integer, solve_nu,
    OptimumResult, DEFAULT_N_CAP,
};

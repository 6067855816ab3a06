//! Random matrix samplers, scenario files and the Monte Carlo runner that
//! compares sampled spectra against predictions.

mod demos;
mod samplers;
mod scenario;

pub use demos::{demo_names, demo_scenario};
pub use samplers::{
    estimate_beta, geometric_diag, sample_gue, sample_haar_unitary, trial_rng, unitarity_defect,
};
pub use scenario::{
    limit_moments, predict, run_scenario, sample_trial, AComponent, BComponent, BStateSpec,
    BetaEstimate, FamilySpec, GeneratorSpec, PredictionSpec, Report, Sample, Scenario, Summary,
    TrialDiagnostics, TrialReport,
};

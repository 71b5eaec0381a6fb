//! Configuration-driven Monte Carlo experiments.
//!
//! Trial `i` of a run is seeded with [`trial_seed`](crate::rng::trial_seed)
//! `(master_seed, i)`, so a configuration determines every output byte.

pub mod config;
pub mod emit;
pub mod run;
pub mod stats;

pub use config::{ExperimentConfig, Format};
pub use emit::{emit, read_trials, trials_file};
pub use run::{run_experiment, ExperimentOutput, TrialCurves, TrialRecord};
pub use stats::{aggregate, AggregateStats, DegreeStats};

use log::{info, warn};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{ec_zero_set, empirical_ec, t_betti_from_curves, EcZeroSet, McEcCurve};
use crate::complex::Model;
use crate::continuum::lambda_from_radius;
use crate::curves::{betti_curve, essential_births, StepCurve};
use crate::error::{Error, Result};
use crate::harness::config::ExperimentConfig;
use crate::harness::stats::{aggregate, AggregateStats};
use crate::model::ModelSpec;
use crate::persistence::compute_persistence;
use crate::rng::trial_seed;

/// Grid resolution of the averaged EC curve.
const MEAN_CURVE_POINTS: usize = 401;

/// One row of the trials table: one trial, one degree `1 <= k <= d-1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub model: Model,
    pub d: usize,
    pub size: f64,
    pub degree: usize,
    pub first_birth: Option<f64>,
    pub all_births: Vec<f64>,
    pub t_ec: Option<f64>,
    pub delta: Option<f64>,
    pub t_betti: Option<f64>,
    pub valid: bool,
}

/// Curves of one trial, in reporting units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialCurves {
    pub trial: usize,
    pub ec: StepCurve,
    /// `betti[k]` for `k = 0..=d`.
    pub betti: Vec<StepCurve>,
}

impl TrialCurves {
    /// Union of all breakpoints.
    pub fn event_grid(&self) -> Vec<f64> {
        let mut ts: Vec<f64> = std::iter::once(&self.ec)
            .chain(&self.betti)
            .flat_map(|c| c.breakpoints().iter().copied())
            .collect();
        ts.sort_by(f64::total_cmp);
        ts.dedup();
        ts
    }
}

#[derive(Debug)]
struct TrialOutcome {
    index: usize,
    seed: u64,
    /// Essential births of degrees `1..d-1`, or why the trial is invalid.
    births: std::result::Result<Vec<Vec<f64>>, String>,
    t_betti: Vec<Option<f64>>,
    curves: Option<TrialCurves>,
}

fn run_trial(spec: &ModelSpec, index: usize, seed: u64) -> TrialOutcome {
    let d = spec.d;
    let mut out = TrialOutcome {
        index,
        seed,
        births: Err(String::new()),
        t_betti: vec![None; d - 1],
        curves: None,
    };
    let result = (|| -> Result<_> {
        let c = spec.generate(seed)?;
        let b = compute_persistence(&c, d)?;
        let ec = empirical_ec(spec, &c, Some(&b))?;
        let betti: Vec<StepCurve> = (0..=d)
            .map(|k| betti_curve(&b, k).map_breakpoints(|t| spec.report_param(t)))
            .collect();
        let t_betti = (1..d)
            .map(|k| t_betti_from_curves(&betti[k - 1], &betti[k], k).ok())
            .collect();
        let births = (0..=d)
            .map(|k| {
                essential_births(&b, k).map(|v| {
                    v.into_iter()
                        .map(|t| spec.report_param(t))
                        .collect::<Vec<_>>()
                })
            })
            .collect::<Result<Vec<_>>>();
        Ok((ec, betti, t_betti, births))
    })();
    match result {
        Ok((ec, betti, t_betti, births)) => {
            out.curves = Some(TrialCurves {
                trial: index,
                ec,
                betti,
            });
            out.t_betti = t_betti;
            out.births = births
                .map(|mut all| {
                    all.truncate(d);
                    all.split_off(1)
                })
                .map_err(|e| e.to_string());
        }
        Err(e) => out.births = Err(e.to_string()),
    }
    out
}

/// Everything an experiment produces.
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub config: ExperimentConfig,
    pub records: Vec<TrialRecord>,
    pub curves: Vec<TrialCurves>,
    pub mean_ec: McEcCurve,
    pub zeros: std::result::Result<EcZeroSet, String>,
    pub stats: std::result::Result<AggregateStats, String>,
}

impl ExperimentOutput {
    pub fn invalid_trials(&self) -> usize {
        let mut bad: Vec<usize> = self
            .records
            .iter()
            .filter(|r| !r.valid)
            .map(|r| r.trial)
            .collect();
        bad.dedup();
        bad.len()
    }

    /// 0 on success, 4 if the EC zeros could not be established, 3 if some
    /// trials were invalid.
    pub fn exit_code(&self) -> i32 {
        if self.zeros.is_err() {
            4
        } else if self.invalid_trials() > 0 || self.stats.is_err() {
            3
        } else {
            0
        }
    }
}

/// Grid for the averaged EC curve, in reporting units.
fn mean_curve_grid(spec: &ModelSpec) -> Vec<f64> {
    let (lo, hi) = match spec.model {
        Model::Cubical | Model::Perm => (0.0, 1.0),
        Model::Boolean => (
            0.0,
            lambda_from_radius(spec.cech_r_max(), spec.size, spec.d),
        ),
        Model::Grf => (-5.0, 5.0),
    };
    let n = MEAN_CURVE_POINTS - 1;
    (0..=n)
        .map(|i| lo + (hi - lo) * i as f64 / n as f64)
        .collect()
}

fn average_curves(curves: &[&StepCurve], grid: &[f64]) -> McEcCurve {
    let t = curves.len() as f64;
    let samples: Vec<Vec<f64>> = curves.iter().map(|c| c.sample(grid)).collect();
    let mean: Vec<f64> = (0..grid.len())
        .map(|j| samples.iter().map(|s| s[j]).sum::<f64>() / t)
        .collect();
    let std_err = (0..grid.len())
        .map(|j| {
            if curves.len() < 2 {
                return 0.0;
            }
            let var = samples
                .iter()
                .map(|s| (s[j] - mean[j]).powi(2))
                .sum::<f64>()
                / (t - 1.0);
            (var / t).sqrt()
        })
        .collect();
    McEcCurve {
        grid: grid.to_vec(),
        mean,
        std_err,
        trials: curves.len(),
    }
}

/// Runs every trial of `cfg` (in parallel), then aggregates. Per-trial
/// failures become invalid rows; only configuration errors abort.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let spec = cfg.spec();
    let d = cfg.d;
    info!(
        "running {} trials of {} d={} size={}",
        cfg.trials, cfg.model, d, cfg.size
    );
    let outcomes: Vec<TrialOutcome> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| run_trial(&spec, i, trial_seed(cfg.master_seed, i as u64)))
        .collect();

    let curves: Vec<TrialCurves> = outcomes.iter().filter_map(|o| o.curves.clone()).collect();
    let grid = mean_curve_grid(&spec);
    let ec_refs: Vec<&StepCurve> = curves.iter().map(|c| &c.ec).collect();
    let mean_ec = if ec_refs.is_empty() {
        McEcCurve {
            grid: grid.clone(),
            mean: vec![0.0; grid.len()],
            std_err: vec![0.0; grid.len()],
            trials: 0,
        }
    } else {
        average_curves(&ec_refs, &grid)
    };

    let zeros = match ec_zero_set(cfg.model, d) {
        Err(Error::UnsupportedDimension(_)) if cfg.model == Model::Boolean => {
            mean_ec.zero_set(cfg.model, d)
        }
        other => other,
    }
    .map_err(|e| e.to_string());
    if let Err(e) = &zeros {
        warn!("expected EC zeros unavailable: {e}");
    }

    let mut records = Vec::with_capacity(cfg.trials * (d - 1));
    for o in &outcomes {
        if let Err(e) = &o.births {
            warn!("trial {} invalid: {e}", o.index);
        }
        for k in 1..d {
            let births = o.births.as_ref().ok().map(|b| b[k - 1].clone());
            let first = births.as_ref().and_then(|b| b.first().copied());
            let t_ec = zeros.as_ref().ok().map(|z| z.zeros[k - 1]);
            records.push(TrialRecord {
                trial: o.index,
                seed: o.seed,
                model: cfg.model,
                d,
                size: cfg.size,
                degree: k,
                first_birth: first,
                all_births: births.unwrap_or_default(),
                t_ec,
                delta: first.zip(t_ec).map(|(b, z)| b - z),
                t_betti: if o.births.is_ok() {
                    o.t_betti[k - 1]
                } else {
                    None
                },
                valid: o.births.is_ok(),
            });
        }
    }
    let stats = aggregate(&records).map_err(|e| e.to_string());
    Ok(ExperimentOutput {
        config: cfg.clone(),
        records,
        curves,
        mean_ec,
        zeros,
        stats,
    })
}

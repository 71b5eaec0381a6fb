use serde::{Deserialize, Serialize};

use crate::complex::Model;
use crate::error::{Error, Result};
use crate::harness::run::TrialRecord;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeStats {
    pub degree: usize,
    /// Valid trials contributing to the statistics.
    pub trials: usize,
    pub invalid: usize,
    pub mean_birth: f64,
    /// Sample standard deviation (`n - 1` denominator); 0 for one trial.
    pub std_birth: f64,
    pub t_ec: Option<f64>,
    pub mean_delta: Option<f64>,
    /// Set when a single trial leaves no degrees of freedom for `std_birth`.
    pub dof_warning: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateStats {
    pub model: Model,
    pub d: usize,
    pub size: f64,
    pub degrees: Vec<DegreeStats>,
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Per-degree statistics of first births over valid records.
///
/// Records are grouped by degree; trial order does not matter.
pub fn aggregate(records: &[TrialRecord]) -> Result<AggregateStats> {
    let first = records
        .first()
        .ok_or_else(|| Error::InvalidArgument("no trial records".into()))?;
    let mut degrees: Vec<usize> = records.iter().map(|r| r.degree).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let stats = degrees
        .into_iter()
        .map(|k| {
            let rows: Vec<&TrialRecord> = records.iter().filter(|r| r.degree == k).collect();
            let valid: Vec<&TrialRecord> = rows
                .iter()
                .copied()
                .filter(|r| r.valid && r.first_birth.is_some())
                .collect();
            if valid.is_empty() {
                return Err(Error::NoValidTrials { degree: k });
            }
            let births: Vec<f64> = valid.iter().filter_map(|r| r.first_birth).collect();
            let (mean_birth, std_birth) = mean_std(&births);
            let deltas: Vec<f64> = valid.iter().filter_map(|r| r.delta).collect();
            let mean_delta = (!deltas.is_empty()).then(|| mean_std(&deltas).0);
            Ok(DegreeStats {
                degree: k,
                trials: valid.len(),
                invalid: rows.len() - valid.len(),
                mean_birth,
                std_birth,
                t_ec: valid.iter().find_map(|r| r.t_ec),
                mean_delta,
                dof_warning: valid.len() < 2,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AggregateStats {
        model: first.model,
        d: first.d,
        size: first.size,
        degrees: stats,
    })
}

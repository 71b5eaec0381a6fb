use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::complex::Model;
use crate::error::{Error, Result};
use crate::model::{ModelSpec, DEFAULT_SIGMA2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Config(format!("unknown format `{other}`"))),
        }
    }
}

fn default_out_dir() -> PathBuf {
    PathBuf::from("out")
}

/// A Monte Carlo experiment, read from a flat JSON object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: Model,
    pub d: usize,
    /// `m` for site models, intensity `n` for the Boolean model, `g` for fields.
    pub size: f64,
    #[serde(default)]
    pub sigma2: Option<f64>,
    pub trials: usize,
    #[serde(default)]
    pub master_seed: u64,
    /// Boolean: `λ` ceiling that sets the Čech truncation radius (default `2d`).
    #[serde(default)]
    pub lambda_hi: Option<f64>,
    /// Boolean: explicit Čech truncation radius.
    #[serde(default)]
    pub r_max: Option<f64>,
    #[serde(default = "default_out_dir")]
    pub out_dir: PathBuf,
    #[serde(default)]
    pub format: Format,
}

impl ExperimentConfig {
    pub fn new(model: Model, d: usize, size: f64, trials: usize, master_seed: u64) -> Self {
        ExperimentConfig {
            model,
            d,
            size,
            sigma2: None,
            trials,
            master_seed,
            lambda_hi: None,
            r_max: None,
            out_dir: default_out_dir(),
            format: Format::Csv,
        }
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn spec(&self) -> ModelSpec {
        let mut spec = ModelSpec::new(self.model, self.d, self.size)
            .with_sigma2(self.sigma2.unwrap_or(DEFAULT_SIGMA2));
        if let Some(l) = self.lambda_hi {
            spec = spec.with_lambda_hi(l);
        }
        if let Some(r) = self.r_max {
            spec = spec.with_r_max(r);
        }
        spec
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.sigma2.is_some() && self.model != Model::Grf {
            return Err(Error::Config("sigma2 only applies to the grf model".into()));
        }
        if (self.lambda_hi.is_some() || self.r_max.is_some()) && self.model != Model::Boolean {
            return Err(Error::Config(
                "lambda_hi and r_max only apply to the boolean model".into(),
            ));
        }
        self.spec().validate()
    }
}

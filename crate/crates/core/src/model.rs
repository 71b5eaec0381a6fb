//! One place that turns `(model, d, size, seed)` into a filtered complex.

use serde::{Deserialize, Serialize};

use crate::complex::{FilteredComplex, Model};
use crate::continuum::{
    cech_filtration_periodic, lambda_from_radius, radius_from_lambda, sample_grf_torus,
    sample_poisson_torus, sublevel_cubical_filtration,
};
use crate::error::{Error, Result};
use crate::site::{gen_cubical_complex, gen_perm_complex};

/// Largest admissible Čech truncation radius.
pub const R_MAX_CAP: f64 = 0.24;

pub const DEFAULT_SIGMA2: f64 = 1e-3;

/// Everything needed to draw one realization of a model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub model: Model,
    pub d: usize,
    /// Linear size `m` (site models), intensity `n` (Boolean) or grid size `g`.
    pub size: f64,
    /// Kernel bandwidth, Gaussian fields only.
    pub sigma2: f64,
    /// Boolean only: ceiling on `λ` used to pick the truncation radius.
    pub lambda_hi: f64,
    /// Boolean only: explicit truncation radius, overriding `lambda_hi`.
    pub r_max: Option<f64>,
}

impl ModelSpec {
    pub fn new(model: Model, d: usize, size: f64) -> Self {
        ModelSpec {
            model,
            d,
            size,
            sigma2: DEFAULT_SIGMA2,
            lambda_hi: 2.0 * d as f64,
            r_max: None,
        }
    }

    pub fn with_sigma2(mut self, sigma2: f64) -> Self {
        self.sigma2 = sigma2;
        self
    }

    pub fn with_lambda_hi(mut self, lambda_hi: f64) -> Self {
        self.lambda_hi = lambda_hi;
        self
    }

    pub fn with_r_max(mut self, r_max: f64) -> Self {
        self.r_max = Some(r_max);
        self
    }

    /// Number of sites, points (in expectation) or grid vertices.
    pub fn volume(&self) -> f64 {
        match self.model {
            Model::Boolean => self.size,
            _ => self.size.powi(self.d as i32),
        }
    }

    /// Čech truncation radius: `min(0.24, 3 r(λ_hi))` unless set explicitly.
    pub fn cech_r_max(&self) -> f64 {
        self.r_max.unwrap_or_else(|| {
            (3.0 * radius_from_lambda(self.lambda_hi, self.size, self.d)).min(R_MAX_CAP)
        })
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=4).contains(&self.d) {
            return Err(Error::Config(format!(
                "d must be 2, 3 or 4, got {}",
                self.d
            )));
        }
        if !(self.size > 0.0) || !self.size.is_finite() {
            return Err(Error::Config(format!(
                "size must be positive, got {}",
                self.size
            )));
        }
        match self.model {
            Model::Cubical | Model::Perm | Model::Grf => {
                if self.size.fract() != 0.0 || self.size < 3.0 {
                    return Err(Error::Config(format!(
                        "{} needs an integer linear size of at least 3, got {}",
                        self.model, self.size
                    )));
                }
            }
            Model::Boolean => {
                if !(self.lambda_hi > 0.0) {
                    return Err(Error::Config("lambda_hi must be positive".into()));
                }
                let r = self.cech_r_max();
                if !(r > 0.0 && r < 0.25) {
                    return Err(Error::Config(format!(
                        "r_max must lie in (0, 0.25), got {r}"
                    )));
                }
            }
        }
        if self.model == Model::Grf && !(self.sigma2 > 0.0) {
            return Err(Error::Config("sigma2 must be positive".into()));
        }
        Ok(())
    }

    /// Draws the realization for `seed`.
    pub fn generate(&self, seed: u64) -> Result<FilteredComplex> {
        let m = self.size as usize;
        match self.model {
            Model::Cubical => gen_cubical_complex(self.d, m, seed),
            Model::Perm => gen_perm_complex(self.d, m, seed),
            Model::Boolean => {
                let pts = sample_poisson_torus(self.size, self.d, seed)?;
                cech_filtration_periodic(&pts, self.d + 1, self.cech_r_max())
            }
            Model::Grf => {
                sublevel_cubical_filtration(&sample_grf_torus(self.d, m, self.sigma2, seed)?)
            }
        }
    }

    /// Converts a filtration value to the reporting parameter (`λ` for the
    /// Boolean model, unchanged otherwise).
    pub fn report_param(&self, t: f64) -> f64 {
        match self.model {
            Model::Boolean => lambda_from_radius(t, self.size, self.d),
            _ => t,
        }
    }
}

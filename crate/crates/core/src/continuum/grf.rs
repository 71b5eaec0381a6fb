//! Stationary Gaussian fields on the periodic grid, by circulant synthesis.

use std::io::{BufRead, Write};

use rand_distr::{Distribution, StandardNormal};
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::complex::{FilteredComplex, Model, ModelDescriptor};
use crate::error::{Error, Result};
use crate::rng::rng_from_seed;
use crate::site::CubicalTorus;

/// Eigenvalues below `-PSD_TOL · λ_max` are rejected; the rest are clipped to 0.
const PSD_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct GrfField {
    pub d: usize,
    pub g: usize,
    pub sigma2: f64,
    pub seed: u64,
    /// `g^d` values, axis 0 fastest.
    pub values: Vec<f64>,
}

impl GrfField {
    /// Header line `d,g,sigma2,seed`, its values, then `g^{d-1}` rows of `g`
    /// values each (axis 0 runs along a row).
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "d,g,sigma2,seed")?;
        writeln!(w, "{},{},{},{}", self.d, self.g, self.sigma2, self.seed)?;
        for row in self.values.chunks(self.g) {
            let row: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidArgument(format!("field dump: {msg}"));
        let mut lines = r.lines();
        let mut next = || -> Result<Option<String>> {
            lines
                .next()
                .transpose()
                .map_err(|e| Error::io("<field dump>", e))
        };
        if next()?.as_deref().map(str::trim) != Some("d,g,sigma2,seed") {
            return Err(bad("missing header"));
        }
        let meta = next()?.ok_or_else(|| bad("missing parameters"))?;
        let parts: Vec<&str> = meta.trim().split(',').collect();
        let [d, g, sigma2, seed] = parts[..] else {
            return Err(bad("expected four parameters"));
        };
        let d: usize = d.parse().map_err(|_| bad("d"))?;
        let g: usize = g.parse().map_err(|_| bad("g"))?;
        let sigma2: f64 = sigma2.parse().map_err(|_| bad("sigma2"))?;
        let seed: u64 = seed.parse().map_err(|_| bad("seed"))?;
        let mut values = Vec::with_capacity(g.pow(d as u32));
        while let Some(line) = next()? {
            if line.trim().is_empty() {
                continue;
            }
            for tok in line.trim().split(',') {
                values.push(tok.parse().map_err(|_| bad("value"))?);
            }
        }
        if values.len() != g.pow(d as u32) {
            return Err(bad("wrong number of values"));
        }
        Ok(GrfField {
            d,
            g,
            sigma2,
            seed,
            values,
        })
    }
}

/// In-place d-dimensional DFT over a `g^d` array (axis 0 fastest), unnormalized.
fn fft_nd(data: &mut [Complex64], g: usize, d: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let fft = if inverse {
        planner.plan_fft_inverse(g)
    } else {
        planner.plan_fft_forward(g)
    };
    let mut line = vec![Complex64::default(); g];
    let mut stride = 1;
    for _ in 0..d {
        let block = stride * g;
        for start in (0..data.len()).step_by(block) {
            for offset in 0..stride {
                let base = start + offset;
                for (i, x) in line.iter_mut().enumerate() {
                    *x = data[base + i * stride];
                }
                fft.process(&mut line);
                for (i, x) in line.iter().enumerate() {
                    data[base + i * stride] = *x;
                }
            }
        }
        stride = block;
    }
}

/// Eigenvalues of the circulant covariance `exp(-dist_T(x, y)² / σ²)` on the
/// grid `(Z/g)^d / g`, clipped at zero.
fn covariance_spectrum(d: usize, g: usize, sigma2: f64) -> Result<Vec<f64>> {
    let total = g.pow(d as u32);
    let mut kernel: Vec<Complex64> = (0..total)
        .map(|mut v| {
            let mut r2 = 0.0;
            for _ in 0..d {
                let c = v % g;
                v /= g;
                let step = c.min(g - c) as f64 / g as f64;
                r2 += step * step;
            }
            Complex64::new((-r2 / sigma2).exp(), 0.0)
        })
        .collect();
    fft_nd(&mut kernel, g, d, false);
    let max = kernel
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let min = kernel.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
    if min < -PSD_TOL * max {
        return Err(Error::SpectrumNotPsd {
            min_eigenvalue: min / max,
        });
    }
    Ok(kernel.into_iter().map(|z| z.re.max(0.0)).collect())
}

/// Unit-variance zero-mean field with covariance `exp(-dist_T² / σ²)` sampled
/// on a periodic `g^d` grid of the unit torus.
pub fn sample_grf_torus(d: usize, g: usize, sigma2: f64, seed: u64) -> Result<GrfField> {
    if d == 0 || d > 4 {
        return Err(Error::UnsupportedDimension(d));
    }
    if g < 3 {
        return Err(Error::SizeTooSmall { min: 3, got: g });
    }
    if !(sigma2 > 0.0) || !sigma2.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "sigma2 must be positive, got {sigma2}"
        )));
    }
    let spectrum = covariance_spectrum(d, g, sigma2)?;
    let total = spectrum.len();
    let mut rng = rng_from_seed(seed);
    let mut noise: Vec<Complex64> = (0..total)
        .map(|_| Complex64::new(StandardNormal.sample(&mut rng), 0.0))
        .collect();
    fft_nd(&mut noise, g, d, false);
    for (z, &lambda) in noise.iter_mut().zip(&spectrum) {
        *z *= lambda.sqrt();
    }
    fft_nd(&mut noise, g, d, true);
    // Pointwise variance of the synthesized field is Σλ / N.
    let scale = total as f64 * (spectrum.iter().sum::<f64>() / total as f64).sqrt();
    let values = noise.iter().map(|z| z.re / scale).collect();
    Ok(GrfField {
        d,
        g,
        sigma2,
        seed,
        values,
    })
}

/// Lower-star cubical filtration of the field: each cell enters at the
/// largest value among its vertices.
pub fn sublevel_cubical_filtration(f: &GrfField) -> Result<FilteredComplex> {
    let grid = CubicalTorus::new(f.d, f.g)?;
    if f.values.len() != grid.n() {
        return Err(Error::InvalidArgument(format!(
            "field has {} values, grid needs {}",
            f.values.len(),
            grid.n()
        )));
    }
    Ok(grid.sublevel_complex(&f.values).with_meta(ModelDescriptor {
        model: Model::Grf,
        d: f.d,
        size: f.g as u64,
        seed: f.seed,
    }))
}

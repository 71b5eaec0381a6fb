//! Closed-form expected EC curves for the Boolean model and the Gaussian
//! field, and the radius/intensity conversion of the Boolean model.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Volume of the unit ball in `R^d`.
pub fn unit_ball_volume(d: usize) -> f64 {
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => unit_ball_volume(d - 2) * 2.0 * PI / d as f64,
    }
}

/// `λ = ω_d n r^d`.
pub fn lambda_from_radius(r: f64, n: f64, d: usize) -> f64 {
    unit_ball_volume(d) * n * r.powi(d as i32)
}

/// `r = (λ / (ω_d n))^{1/d}`.
pub fn radius_from_lambda(lambda: f64, n: f64, d: usize) -> f64 {
    (lambda / (unit_ball_volume(d) * n)).powf(1.0 / d as f64)
}

/// Expected EC of the Boolean model `B(n, λ)`; only `d = 2, 3` have closed
/// forms.
pub fn expected_ec_boolean(d: usize, n: f64, lambda: f64) -> Result<f64> {
    let poly = match d {
        2 => 1.0 - lambda,
        3 => 1.0 - 3.0 * lambda + 3.0 / 32.0 * PI * PI * lambda * lambda,
        _ => return Err(Error::UnsupportedDimension(d)),
    };
    Ok(n * (-lambda).exp() * poly)
}

/// Probabilists' Hermite polynomial
/// `H_k(x) = k! Σ_{j ≤ k/2} (-1)^j x^{k-2j} / (j! (k-2j)! 2^j)`.
pub fn hermite(k: usize, x: f64) -> f64 {
    let fact = |n: usize| (1..=n).fold(1.0, |acc, i| acc * i as f64);
    let kf = fact(k);
    (0..=k / 2)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * x.powi((k - 2 * j) as i32) / (fact(j) * fact(k - 2 * j) * 2f64.powi(j as i32))
        })
        .sum::<f64>()
        * kf
}

/// Expected EC of the sublevel set `{f <= α}` of a unit-variance Gaussian
/// field on the torus: `(2/ω_d) (2π)^{-(d+1)/2} H_{d-1}(-α) e^{-α²/2}`.
pub fn expected_ec_grf(d: usize, alpha: f64) -> f64 {
    assert!(d >= 1);
    2.0 / unit_ball_volume(d)
        * (2.0 * PI).powf(-((d + 1) as f64) / 2.0)
        * hermite(d - 1, -alpha)
        * (-alpha * alpha / 2.0).exp()
}

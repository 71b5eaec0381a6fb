//! Zeros of expected EC curves, Monte Carlo EC averages, Betti crossing
//! times and percolation gaps.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{FilteredComplex, Model};
use crate::continuum::{expected_ec_boolean, expected_ec_grf};
use crate::curves::{alternating_betti_sum, betti_curve, euler_curve_from_counts, StepCurve};
use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::persistence::{compute_persistence, Barcode};
use crate::rng::trial_seed;
use crate::site::{expected_ec_cubical, expected_ec_perm};

/// Scan resolution of [`find_zeros`].
pub const SCAN_POINTS: usize = 10_000;

/// Bisection tolerance used for analytic curves.
pub const ZERO_TOL: f64 = 1e-13;

/// Roots of `f` on `[lo, hi]`.
///
/// `f` is sampled at `SCAN_POINTS + 1` evenly spaced points; sample points
/// where `f` vanishes exactly are roots, and every sign change between
/// neighbours is bisected until the bracket is shorter than `tol`. Two roots
/// inside one scan cell cancel and are missed.
pub fn find_zeros(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<Vec<f64>> {
    if !(lo < hi) || !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need lo < hi and tol > 0, got [{lo}, {hi}] and {tol}"
        )));
    }
    let step = (hi - lo) / SCAN_POINTS as f64;
    let xs: Vec<f64> = (0..=SCAN_POINTS)
        .map(|i| {
            if i == SCAN_POINTS {
                hi
            } else {
                lo + i as f64 * step
            }
        })
        .collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut roots = Vec::new();
    for i in 0..=SCAN_POINTS {
        if ys[i] == 0.0 {
            roots.push(xs[i]);
        } else if i < SCAN_POINTS && ys[i + 1] != 0.0 && (ys[i] < 0.0) != (ys[i + 1] < 0.0) {
            roots.push(bisect(&f, xs[i], xs[i + 1], ys[i], tol));
        }
    }
    if roots.is_empty() {
        return Err(Error::NoBracketsFound { lo, hi });
    }
    Ok(roots)
}

fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, fa: f64, tol: f64) -> f64 {
    let negative_at_a = fa < 0.0;
    while b - a >= tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == negative_at_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Parameter domain scanned for zeros: `p` for site models, `λ` for the
/// Boolean model, `α` for Gaussian fields.
pub fn param_domain(model: Model) -> (f64, f64) {
    match model {
        Model::Cubical | Model::Perm => (0.0, 1.0),
        Model::Boolean => (0.0, 20.0),
        Model::Grf => (-5.0, 5.0),
    }
}

/// Expected EC of `model` at parameter `t` with `n` sites, points or grid
/// vertices.
pub fn expected_ec(model: Model, d: usize, n: f64, t: f64) -> Result<f64> {
    Ok(match model {
        Model::Cubical => expected_ec_cubical(d, n, t),
        Model::Perm => expected_ec_perm(d, n, t),
        Model::Boolean => expected_ec_boolean(d, n, t)?,
        Model::Grf => n * expected_ec_grf(d, t),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EcZeroSet {
    pub model: Model,
    pub d: usize,
    pub domain: (f64, f64),
    /// Interior zeros, increasing; `zeros[k-1]` is `t_k^ec`.
    pub zeros: Vec<f64>,
}

/// Keeps zeros away from the domain ends and checks there are `d - 1`.
fn interior_zero_set(
    model: Model,
    d: usize,
    domain: (f64, f64),
    zeros: Vec<f64>,
) -> Result<EcZeroSet> {
    let margin = 1e-8 * (domain.1 - domain.0);
    let zeros: Vec<f64> = zeros
        .into_iter()
        .filter(|&z| z > domain.0 + margin && z < domain.1 - margin)
        .collect();
    if zeros.len() != d - 1 {
        return Err(Error::ZeroCountMismatch {
            expected: d - 1,
            got: zeros.len(),
        });
    }
    Ok(EcZeroSet {
        model,
        d,
        domain,
        zeros,
    })
}

/// Interior zeros of the closed-form expected EC curve. The zeros do not
/// depend on the size, so none is needed. Boolean `d = 4` has no closed form;
/// use [`monte_carlo_ec`] there.
pub fn ec_zero_set(model: Model, d: usize) -> Result<EcZeroSet> {
    if !(2..=4).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    // Fail early rather than scanning an unsupported curve.
    expected_ec(model, d, 1.0, 0.0)?;
    let domain = param_domain(model);
    let zeros = find_zeros(
        |t| expected_ec(model, d, 1.0, t).unwrap_or(f64::NAN),
        domain.0,
        domain.1,
        ZERO_TOL,
    )?;
    interior_zero_set(model, d, domain, zeros)
}

/// Empirical EC curve of one realization in reporting units (`λ` for the
/// Boolean model).
///
/// For the Boolean model the curve is the alternating Betti sum up to degree
/// `d` of the truncated Čech complex; for the other models it is the
/// face-count curve.
pub fn empirical_ec(
    spec: &ModelSpec,
    c: &FilteredComplex,
    barcode: Option<&Barcode>,
) -> Result<StepCurve> {
    match spec.model {
        Model::Boolean => {
            let owned;
            let b = match barcode {
                Some(b) => b,
                None => {
                    owned = compute_persistence(c, spec.d)?;
                    &owned
                }
            };
            Ok(alternating_betti_sum(b, spec.d).map_breakpoints(|r| spec.report_param(r)))
        }
        _ => Ok(euler_curve_from_counts(c)),
    }
}

/// Pointwise mean of empirical EC curves on a fixed grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McEcCurve {
    pub grid: Vec<f64>,
    pub mean: Vec<f64>,
    /// Standard error of the mean (zero for a single trial).
    pub std_err: Vec<f64>,
    pub trials: usize,
}

impl McEcCurve {
    /// The averaged curve as a step curve with breakpoints on the grid.
    pub fn as_step_curve(&self) -> StepCurve {
        StepCurve::from_parts(self.grid.clone(), self.mean.clone())
            .expect("grid is strictly increasing")
    }

    /// Sign changes of the averaged curve, located by linear interpolation
    /// between grid points.
    pub fn zeros(&self) -> Vec<f64> {
        let (x, y) = (&self.grid, &self.mean);
        let mut out = Vec::new();
        for i in 0..y.len().saturating_sub(1) {
            if y[i] == 0.0 {
                if i > 0
                    && (y[i - 1] < 0.0) != (y[i + 1] < 0.0)
                    && y[i - 1] != 0.0
                    && y[i + 1] != 0.0
                {
                    out.push(x[i]);
                }
            } else if y[i + 1] != 0.0 && (y[i] < 0.0) != (y[i + 1] < 0.0) {
                out.push(x[i] + (x[i + 1] - x[i]) * y[i] / (y[i] - y[i + 1]));
            }
        }
        out
    }

    /// Zeros as an [`EcZeroSet`] over the grid range, checked against `d - 1`.
    pub fn zero_set(&self, model: Model, d: usize) -> Result<EcZeroSet> {
        let domain = (self.grid[0], *self.grid.last().unwrap());
        interior_zero_set(model, d, domain, self.zeros())
    }
}

/// Averages the empirical EC curves of `trials` realizations of `spec`,
/// seeded by `trial_seed(master_seed, i)`, on `grid`.
pub fn monte_carlo_ec(
    spec: &ModelSpec,
    trials: usize,
    master_seed: u64,
    grid: &[f64],
) -> Result<McEcCurve> {
    if trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    if grid.is_empty() || grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument(
            "grid must be strictly increasing".into(),
        ));
    }
    spec.validate()?;
    let samples: Vec<Vec<f64>> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let c = spec.generate(trial_seed(master_seed, i))?;
            Ok(empirical_ec(spec, &c, None)?.sample(grid))
        })
        .collect::<Result<_>>()?;
    let t = trials as f64;
    let mut mean = vec![0.0; grid.len()];
    let mut std_err = vec![0.0; grid.len()];
    for j in 0..grid.len() {
        mean[j] = samples.iter().map(|s| s[j]).sum::<f64>() / t;
        if trials > 1 {
            let var = samples
                .iter()
                .map(|s| (s[j] - mean[j]).powi(2))
                .sum::<f64>()
                / (t - 1.0);
            std_err[j] = (var / t).sqrt();
        }
    }
    Ok(McEcCurve {
        grid: grid.to_vec(),
        mean,
        std_err,
        trials,
    })
}

/// First time the degree-`k` Betti curve catches up with degree `k-1`:
/// the smallest breakpoint where `β_k >= β_{k-1}` and one of them is nonzero.
pub fn t_betti_from_curves(lower: &StepCurve, upper: &StepCurve, k: usize) -> Result<f64> {
    let mut ts: Vec<f64> = lower
        .breakpoints()
        .iter()
        .chain(upper.breakpoints())
        .copied()
        .collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    ts.into_iter()
        .find(|&t| {
            let (a, b) = (lower.eval(t), upper.eval(t));
            b >= a && a.max(b) > 0.0
        })
        .ok_or(Error::BettiCrossingNotFound { degree: k })
}

/// [`t_betti_from_curves`] on the Betti curves of a barcode; `1 <= k`.
pub fn t_betti(bc: &Barcode, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidArgument("t_betti needs k >= 1".into()));
    }
    t_betti_from_curves(&betti_curve(bc, k - 1), &betti_curve(bc, k), k)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapRecord {
    pub degree: usize,
    /// First essential birth.
    pub t_perc: f64,
    pub t_ec: f64,
    pub delta: f64,
}

/// `Δ_k = min births_k - t_k^ec` for `k = 1..d-1`; `births[k-1]` holds the
/// essential births of degree `k`.
pub fn gap_records(births: &[Vec<f64>], zeros: &EcZeroSet) -> Result<Vec<GapRecord>> {
    if births.len() != zeros.zeros.len() {
        return Err(Error::DegreeMismatch {
            births: births.len(),
            zeros: zeros.zeros.len(),
        });
    }
    births
        .iter()
        .zip(&zeros.zeros)
        .enumerate()
        .map(|(i, (b, &t_ec))| {
            let t_perc =
                b.iter().copied().min_by(f64::total_cmp).ok_or_else(|| {
                    Error::InvalidArgument(format!("no births in degree {}", i + 1))
                })?;
            Ok(GapRecord {
                degree: i + 1,
                t_perc,
                t_ec,
                delta: t_perc - t_ec,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuum::hermite;
    use crate::persistence::Interval;

    #[test]
    fn linear_root() {
        let z = find_zeros(|a| hermite(1, -a), -5.0, 5.0, 1e-12).unwrap();
        assert_eq!(z.len(), 1);
        assert!(z[0].abs() < 1e-12);
    }

    #[test]
    fn cubical_d2_root() {
        let z = find_zeros(|p| expected_ec_cubical(2, 1.0, p), 0.0, 1.0, 1e-12).unwrap();
        let interior: Vec<f64> = z
            .into_iter()
            .filter(|&p| p > 1e-8 && p < 1.0 - 1e-8)
            .collect();
        assert_eq!(interior.len(), 1);
        assert!((interior[0] - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-9);
    }

    #[test]
    fn grf_d4_roots() {
        let z = find_zeros(|a| expected_ec_grf(4, a), -5.0, 5.0, 1e-12).unwrap();
        let s = 3f64.sqrt();
        assert_eq!(z.len(), 3);
        for (got, want) in z.iter().zip([-s, 0.0, s]) {
            assert!((got - want).abs() < 1e-9);
        }
    }

    #[test]
    fn no_brackets() {
        assert!(matches!(
            find_zeros(|x| x * x + 1.0, -1.0, 1.0, 1e-10),
            Err(Error::NoBracketsFound { .. })
        ));
    }

    #[test]
    fn zero_sets() {
        assert_eq!(ec_zero_set(Model::Cubical, 2).unwrap().zeros.len(), 1);
        let b3 = ec_zero_set(Model::Boolean, 3).unwrap().zeros;
        // Roots of 1 - 3x + (3 pi^2 / 32) x^2.
        let a = 3.0 * std::f64::consts::PI.powi(2) / 32.0;
        let disc = (9.0 - 4.0 * a).sqrt();
        assert!((b3[0] - (3.0 - disc) / (2.0 * a)).abs() < 1e-9);
        assert!((b3[1] - (3.0 + disc) / (2.0 * a)).abs() < 1e-9);
        let g3 = ec_zero_set(Model::Grf, 3).unwrap().zeros;
        assert!((g3[0] + 1.0).abs() < 1e-9 && (g3[1] - 1.0).abs() < 1e-9);
        assert!(matches!(
            ec_zero_set(Model::Boolean, 4),
            Err(Error::UnsupportedDimension(4))
        ));
    }

    #[test]
    fn perm_zeros_are_symmetric() {
        for d in 2..=4 {
            let z = ec_zero_set(Model::Perm, d).unwrap().zeros;
            for (a, b) in z.iter().zip(z.iter().rev()) {
                assert!((a + b - 1.0).abs() < 1e-9, "d={d} {z:?}");
            }
            if d % 2 == 0 {
                assert!((z[(d - 1) / 2] - 0.5).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn interpolated_zeros() {
        let mc = McEcCurve {
            grid: vec![0.0, 1.0, 2.0, 3.0],
            mean: vec![2.0, 1.0, -1.0, 0.0],
            std_err: vec![0.0; 4],
            trials: 1,
        };
        assert_eq!(mc.zeros(), vec![1.5]);
        let mc = McEcCurve {
            mean: vec![1.0, 0.0, -1.0, -1.0],
            ..mc
        };
        assert_eq!(mc.zeros(), vec![1.0]);
    }

    #[test]
    fn single_trial_average_is_that_trial() {
        let spec = ModelSpec::new(Model::Cubical, 2, 5.0);
        let grid: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
        let mc = monte_carlo_ec(&spec, 1, 77, &grid).unwrap();
        let c = spec.generate(trial_seed(77, 0)).unwrap();
        assert_eq!(mc.mean, euler_curve_from_counts(&c).sample(&grid));
        assert!(mc.std_err.iter().all(|&s| s == 0.0));
    }

    #[test]
    fn betti_crossing() {
        let b0 = StepCurve::from_jumps(vec![(0.0, 1.0)]);
        let b1 = StepCurve::from_jumps(vec![(0.4, 2.0)]);
        assert_eq!(t_betti_from_curves(&b0, &b1, 1).unwrap(), 0.4);
        let zero = StepCurve::default();
        assert!(matches!(
            t_betti_from_curves(&zero, &zero, 1),
            Err(Error::BettiCrossingNotFound { degree: 1 })
        ));
        let bc = Barcode::new(
            2,
            vec![
                vec![Interval {
                    birth: 0.0,
                    death: f64::INFINITY,
                }],
                vec![
                    Interval {
                        birth: 0.4,
                        death: f64::INFINITY
                    };
                    2
                ],
            ],
        );
        assert_eq!(t_betti(&bc, 1).unwrap(), 0.4);
    }

    #[test]
    fn gaps() {
        let perm2 = EcZeroSet {
            model: Model::Perm,
            d: 2,
            domain: (0.0, 1.0),
            zeros: vec![0.5],
        };
        let g = gap_records(&[vec![0.5, 0.7]], &perm2).unwrap();
        assert_eq!(g[0].delta, 0.0);
        assert_eq!(g[0].degree, 1);
        let z = EcZeroSet {
            zeros: vec![0.4],
            ..perm2.clone()
        };
        assert!((gap_records(&[vec![0.3]], &z).unwrap()[0].delta + 0.1).abs() < 1e-15);
        assert!(matches!(
            gap_records(&[vec![0.3], vec![0.4]], &perm2),
            Err(Error::DegreeMismatch {
                births: 2,
                zeros: 1
            })
        ));
    }
}

//! Right-continuous step curves: Betti curves, EC curves and their averages.

use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial;
use crate::complex::FilteredComplex;
use crate::error::{Error, Result};
use crate::persistence::Barcode;

/// Piecewise-constant function that is zero left of the first breakpoint and
/// takes `values[i]` on `[breakpoints[i], breakpoints[i + 1])`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct StepCurve {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl StepCurve {
    /// Builds a curve from `(t, jump)` events. Events at equal `t` merge.
    pub fn from_jumps(mut events: Vec<(f64, f64)>) -> Self {
        events.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut curve = StepCurve::default();
        let mut level = 0.0;
        for (t, jump) in events {
            level += jump;
            if curve.breakpoints.last() == Some(&t) {
                *curve.values.last_mut().unwrap() = level;
            } else {
                curve.breakpoints.push(t);
                curve.values.push(level);
            }
        }
        curve
    }

    /// Builds a curve directly; `breakpoints` must be strictly increasing.
    pub fn from_parts(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if breakpoints.len() != values.len() || breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidArgument(
                "breakpoints must be strictly increasing, one value each".into(),
            ));
        }
        Ok(StepCurve {
            breakpoints,
            values,
        })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self.breakpoints.partition_point(|&b| b <= t) {
            0 => 0.0,
            i => self.values[i - 1],
        }
    }

    /// Value after the last breakpoint.
    pub fn final_value(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn sample(&self, grid: &[f64]) -> Vec<f64> {
        grid.iter().map(|&t| self.eval(t)).collect()
    }

    /// `Σ w_i · f_i` over the union of breakpoints.
    pub fn linear_combination(terms: &[(f64, &StepCurve)]) -> StepCurve {
        let mut events = Vec::new();
        for &(w, curve) in terms {
            let mut prev = 0.0;
            for (&t, &v) in curve.breakpoints.iter().zip(&curve.values) {
                events.push((t, w * (v - prev)));
                prev = v;
            }
        }
        StepCurve::from_jumps(events)
    }

    /// Reparameterizes the curve through a strictly increasing map.
    pub fn map_breakpoints(&self, f: impl Fn(f64) -> f64) -> StepCurve {
        StepCurve {
            breakpoints: self.breakpoints.iter().map(|&t| f(t)).collect(),
            values: self.values.clone(),
        }
    }
}

/// `β_k(t)`: number of degree-`k` intervals with `birth <= t < death`.
pub fn betti_curve(b: &Barcode, k: usize) -> StepCurve {
    let mut events = Vec::new();
    for bar in b.degree(k) {
        events.push((bar.birth, 1.0));
        if bar.death.is_finite() {
            events.push((bar.death, -1.0));
        }
    }
    StepCurve::from_jumps(events)
}

/// `Σ_k (-1)^k β_k(t)` over degrees `0..=max_degree`.
pub fn alternating_betti_sum(b: &Barcode, max_degree: usize) -> StepCurve {
    let curves: Vec<StepCurve> = (0..=max_degree).map(|k| betti_curve(b, k)).collect();
    let terms: Vec<(f64, &StepCurve)> = curves
        .iter()
        .enumerate()
        .map(|(k, c)| (if k % 2 == 0 { 1.0 } else { -1.0 }, c))
        .collect();
    StepCurve::linear_combination(&terms)
}

/// Sorted births of the essential degree-`k` classes.
///
/// On a filtration whose final stage is the whole torus there are exactly
/// `C(d, k)` of them; any other count is reported as an error.
pub fn essential_births(b: &Barcode, k: usize) -> Result<Vec<f64>> {
    let births: Vec<f64> = b
        .degree(k)
        .iter()
        .filter(|i| i.is_essential())
        .map(|i| i.birth)
        .collect();
    let expected = binomial(b.ambient_dim, k) as usize;
    if births.len() != expected {
        return Err(Error::EssentialCountMismatch {
            degree: k,
            expected,
            got: births.len(),
        });
    }
    Ok(births)
}

/// EC curve from cell counts: `χ(t) = Σ_k (-1)^k #{k-cells with value <= t}`.
pub fn euler_curve_from_counts(c: &FilteredComplex) -> StepCurve {
    StepCurve::from_jumps(
        c.cells()
            .iter()
            .map(|cell| (cell.value, if cell.dim % 2 == 0 { 1.0 } else { -1.0 }))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ParamKind;
    use crate::persistence::{compute_persistence, Interval};

    fn cycle_graph() -> FilteredComplex {
        let mut c = FilteredComplex::new(2, ParamKind::SiteProbability);
        for _ in 0..3 {
            c.push(0, vec![], 0.0);
        }
        c.push(1, vec![0, 1], 1.0);
        c.push(1, vec![1, 2], 1.0);
        c.push(1, vec![0, 2], 1.0);
        c
    }

    #[test]
    fn empty_barcode_gives_zero_curve() {
        let b = Barcode::new(2, vec![vec![], vec![]]);
        let curve = betti_curve(&b, 1);
        assert_eq!(curve.eval(-1.0), 0.0);
        assert_eq!(curve.eval(10.0), 0.0);
        assert!(curve.breakpoints().is_empty());
    }

    #[test]
    fn cycle_graph_curves() {
        let b = compute_persistence(&cycle_graph(), 1).unwrap();
        let b0 = betti_curve(&b, 0);
        assert_eq!(b0.breakpoints(), &[0.0, 1.0]);
        assert_eq!(b0.values(), &[3.0, 1.0]);
        let b1 = betti_curve(&b, 1);
        assert_eq!((b1.eval(0.5), b1.eval(1.0), b1.eval(7.0)), (0.0, 1.0, 1.0));

        let ec = euler_curve_from_counts(&cycle_graph());
        assert_eq!(ec.breakpoints(), &[0.0, 1.0]);
        assert_eq!(ec.values(), &[3.0, 0.0]);

        let mut cycle = cycle_graph();
        cycle.ambient_dim = 1;
        let b = compute_persistence(&cycle, 1).unwrap();
        assert_eq!(essential_births(&b, 1).unwrap(), vec![1.0]);
    }

    #[test]
    fn single_vertex_ec() {
        let mut c = FilteredComplex::new(2, ParamKind::Level);
        c.push(0, vec![], 0.0);
        let ec = euler_curve_from_counts(&c);
        assert_eq!((ec.eval(-0.1), ec.eval(0.0), ec.eval(5.0)), (0.0, 1.0, 1.0));
    }

    #[test]
    fn essential_count_mismatch_is_reported() {
        let inf = f64::INFINITY;
        let b = Barcode::new(
            2,
            vec![
                vec![],
                vec![Interval {
                    birth: 0.3,
                    death: inf,
                }],
            ],
        );
        assert!(matches!(
            essential_births(&b, 1),
            Err(Error::EssentialCountMismatch {
                degree: 1,
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn step_curve_evaluation_is_right_continuous() {
        let c = StepCurve::from_parts(vec![0.0, 1.0, 2.0], vec![1.0, 3.0, -1.0]).unwrap();
        assert_eq!(c.eval(0.999), 1.0);
        assert_eq!(c.eval(1.0), 3.0);
        assert_eq!(c.eval(2.5), -1.0);
        assert!(StepCurve::from_parts(vec![1.0, 1.0], vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn linear_combination_merges_breakpoints() {
        let a = StepCurve::from_parts(vec![0.0, 2.0], vec![1.0, 0.0]).unwrap();
        let b = StepCurve::from_parts(vec![1.0], vec![2.0]).unwrap();
        let c = StepCurve::linear_combination(&[(1.0, &a), (-1.0, &b)]);
        assert_eq!(c.breakpoints(), &[0.0, 1.0, 2.0]);
        assert_eq!(c.values(), &[1.0, -1.0, -2.0]);
    }
}

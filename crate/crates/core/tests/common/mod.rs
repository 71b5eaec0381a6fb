#![allow(dead_code)]

use homperc::combinatorics::binomial;
use homperc::curves::{alternating_betti_sum, essential_births, euler_curve_from_counts};
use homperc::site::complement_filtration;
use homperc::{compute_persistence, FilteredComplex};

/// Face-count EC and alternating Betti sum agree at every breakpoint of
/// either curve. Returns the first disagreement.
pub fn euler_poincare_mismatch(c: &FilteredComplex) -> Option<(f64, f64, f64)> {
    let top = c.top_dim().unwrap_or(0);
    let b = compute_persistence(c, top).expect("persistence");
    let faces = euler_curve_from_counts(c);
    let betti = alternating_betti_sum(&b, top);
    let mut ts: Vec<f64> = faces
        .breakpoints()
        .iter()
        .chain(betti.breakpoints())
        .copied()
        .collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    ts.into_iter()
        .map(|t| (t, faces.eval(t), betti.eval(t)))
        .find(|(_, a, b)| a != b)
}

/// Checks `#{births_k(P) <= p} + #{births_{d-k}(P^c) <= 1-p} = C(d,k)` for
/// every `k` and `p`. Returns the first violation as `(k, p, lhs)`.
pub fn duality_violation(c: &FilteredComplex, ps: &[f64]) -> Option<(usize, f64, usize)> {
    let d = c.ambient_dim;
    let dual = complement_filtration(c).expect("complement");
    let b = compute_persistence(c, d).expect("persistence");
    let bc = compute_persistence(&dual, d).expect("persistence");
    for k in 0..=d {
        let mine = essential_births(&b, k).expect("essential births");
        let theirs = essential_births(&bc, d - k).expect("essential births");
        for &p in ps {
            let lhs = mine.iter().filter(|&&x| x <= p).count()
                + theirs.iter().filter(|&&x| x <= 1.0 - p).count();
            if lhs as u64 != binomial(d, k) {
                return Some((k, p, lhs));
            }
        }
    }
    None
}

/// `0.1, 0.2, ..., 0.9`.
pub fn decile_grid() -> Vec<f64> {
    (1..=9).map(|i| i as f64 / 10.0).collect()
}

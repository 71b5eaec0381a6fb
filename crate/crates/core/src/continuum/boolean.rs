//! Poisson point processes on the torus and their periodic Čech filtration.

use std::io::Write;

use rand_distr::{Distribution, Poisson};

use crate::complex::{FilteredComplex, Model, ModelDescriptor, ParamKind};
use crate::continuum::meb::{min_enclosing_radius_fixed, MAX_DIM};
use crate::error::{Error, Result};
use crate::rng::{rng_from_seed, unit_uniform};
use crate::simplicial::flag_complex;

#[derive(Debug, Clone, PartialEq)]
pub struct TorusPointSet {
    pub d: usize,
    pub points: Vec<Vec<f64>>,
    /// Poisson mean; the realized count is `points.len()`.
    pub intensity: f64,
    pub seed: u64,
}

impl TorusPointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// One row per point, header `x0,x1,...`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let header: Vec<String> = (0..self.d).map(|i| format!("x{i}")).collect();
        writeln!(w, "{}", header.join(","))?;
        for p in &self.points {
            let row: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// `N ~ Poisson(n)` points, i.i.d. uniform on `[0,1)^d`.
pub fn sample_poisson_torus(n: f64, d: usize, seed: u64) -> Result<TorusPointSet> {
    if !(n > 0.0) || !n.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "intensity must be positive, got {n}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let count = Poisson::new(n)
        .map_err(|e| Error::InvalidArgument(e.to_string()))?
        .sample(&mut rng) as usize;
    let points = (0..count)
        .map(|_| (0..d).map(|_| unit_uniform(&mut rng)).collect())
        .collect();
    Ok(TorusPointSet {
        d,
        points,
        intensity: n,
        seed,
    })
}

/// Signed per-axis offset from `a` to the copy of `b` nearest to `a`.
fn wrapped_delta(a: f64, b: f64) -> f64 {
    let delta = b - a;
    delta - delta.round()
}

pub fn torus_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| wrapped_delta(x, y).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Pairs of points at torus distance `<= reach`, as sorted adjacency lists.
fn neighbor_graph(pts: &TorusPointSet, reach: f64) -> Vec<Vec<u32>> {
    let n = pts.len();
    let d = pts.d;
    let mut adjacency = vec![Vec::new(); n];
    let bins = (1.0 / reach).floor() as usize;
    if bins < 3 || n < 64 {
        for i in 0..n {
            for j in i + 1..n {
                if torus_distance(&pts.points[i], &pts.points[j]) <= reach {
                    adjacency[i].push(j as u32);
                    adjacency[j].push(i as u32);
                }
            }
        }
    } else {
        let bin_of = |p: &[f64]| -> Vec<usize> {
            p.iter()
                .map(|&x| ((x * bins as f64) as usize).min(bins - 1))
                .collect()
        };
        let flat = |c: &[usize]| c.iter().rev().fold(0, |acc, &x| acc * bins + x);
        let mut cells: Vec<Vec<usize>> = vec![Vec::new(); bins.pow(d as u32)];
        for (i, p) in pts.points.iter().enumerate() {
            cells[flat(&bin_of(p))].push(i);
        }
        let offsets: Vec<Vec<isize>> = (0..3usize.pow(d as u32))
            .map(|mut k| {
                (0..d)
                    .map(|_| {
                        let o = (k % 3) as isize - 1;
                        k /= 3;
                        o
                    })
                    .collect()
            })
            .collect();
        for (i, p) in pts.points.iter().enumerate() {
            let home = bin_of(p);
            for off in &offsets {
                let c: Vec<usize> = home
                    .iter()
                    .zip(off)
                    .map(|(&h, &o)| (h as isize + o).rem_euclid(bins as isize) as usize)
                    .collect();
                for &j in &cells[flat(&c)] {
                    if j > i && torus_distance(p, &pts.points[j]) <= reach {
                        adjacency[i].push(j as u32);
                        adjacency[j].push(i as u32);
                    }
                }
            }
        }
    }
    for a in &mut adjacency {
        a.sort_unstable();
        a.dedup();
    }
    adjacency
}

/// Radius of the smallest ball enclosing the vertices of a simplex on the
/// torus, after unwrapping every vertex to the copy nearest the first one.
pub fn periodic_enclosing_radius(points: &[&[f64]]) -> f64 {
    match points {
        [] => 0.0,
        [_] => 0.0,
        [a, b] => torus_distance(a, b) / 2.0,
        [base, ..] => {
            let dim = base.len();
            let mut unwrapped = [[0.0; MAX_DIM]; 16];
            assert!(points.len() <= unwrapped.len() && dim <= MAX_DIM);
            for (u, p) in unwrapped.iter_mut().zip(points) {
                for axis in 0..dim {
                    u[axis] = base[axis] + wrapped_delta(base[axis], p[axis]);
                }
            }
            min_enclosing_radius_fixed(&unwrapped[..points.len()], dim)
        }
    }
}

/// Čech filtration of the union of balls around `pts`, in the radius `r`.
///
/// Simplices up to dimension `max_dim` whose enclosing radius exceeds
/// `r_max` are omitted. `r_max` must stay below a quarter period so that the
/// nearest-copy unwrapping is unambiguous.
pub fn cech_filtration_periodic(
    pts: &TorusPointSet,
    max_dim: usize,
    r_max: f64,
) -> Result<FilteredComplex> {
    if !(r_max < 0.25) {
        return Err(Error::RadiusTooLarge(r_max));
    }
    if max_dim > 5 {
        return Err(Error::UnsupportedDimension(max_dim));
    }
    let adjacency = neighbor_graph(pts, 2.0 * r_max);
    let complex = flag_complex(&adjacency, max_dim, pts.d, ParamKind::Radius, |s| {
        let verts: Vec<&[f64]> = s
            .iter()
            .map(|&v| pts.points[v as usize].as_slice())
            .collect();
        let r = periodic_enclosing_radius(&verts);
        (r <= r_max).then_some(r)
    });
    Ok(complex.with_meta(ModelDescriptor {
        model: Model::Boolean,
        d: pts.d,
        size: pts.intensity.round() as u64,
        seed: pts.seed,
    }))
}

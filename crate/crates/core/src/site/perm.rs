//! Permutahedral site percolation.
//!
//! Sites are the points of the dual root lattice `A*_d`, written in integer
//! coordinates `c` over the generators `g_j = e_j - 1/(d+1)` (`j = 1..d`) of
//! the zero-sum hyperplane in `R^{d+1}`. The torus is the quotient by
//! `m · g_j`, so sites are `(Z/m)^d`. Two sites share a facet of their
//! Voronoi permutahedra exactly when their difference is a Voronoi-relevant
//! vector; those are found with Voronoi's criterion (a vector is relevant iff
//! `±v` are the only shortest vectors of the coset `v + 2Λ`).
//!
//! The complex handed to the persistence engine is the nerve of the closed
//! sites: the clique complex of the adjacency graph, filtered lower-star by
//! the site values.

use crate::combinatorics::{factorial, stirling2};
use crate::complex::{FilteredComplex, Model, ModelDescriptor, ParamKind};
use crate::error::{Error, Result};
use crate::rng::uniform_values;
use crate::simplicial::flag_complex;
use crate::site::{check_site_args, SiteGrid};

#[derive(Debug, Clone)]
pub struct PermLattice {
    d: usize,
    m: usize,
    /// Images of the generators under an isometry of the hyperplane onto `R^d`.
    basis: Vec<Vec<f64>>,
    /// Facet-neighbor offsets in generator coordinates.
    offsets: Vec<Vec<i64>>,
}

/// `(d+1) · |Σ c_j g_j|²`, an integer.
fn scaled_norm(c: &[i64]) -> i64 {
    let d = c.len() as i64;
    let sum: i64 = c.iter().sum();
    (d + 1) * c.iter().map(|x| x * x).sum::<i64>() - sum * sum
}

fn relevant_vectors(d: usize) -> Vec<Vec<i64>> {
    let side = 5usize; // coefficients in -2..=2
    let total = side.pow(d as u32);
    let mut best: std::collections::HashMap<Vec<i64>, (i64, Vec<Vec<i64>>)> = Default::default();
    for idx in 0..total {
        let mut c = Vec::with_capacity(d);
        let mut rest = idx;
        for _ in 0..d {
            c.push((rest % side) as i64 - 2);
            rest /= side;
        }
        if c.iter().all(|&x| x == 0) {
            continue;
        }
        let class: Vec<i64> = c.iter().map(|x| x.rem_euclid(2)).collect();
        let norm = scaled_norm(&c);
        let entry = best.entry(class).or_insert((i64::MAX, Vec::new()));
        if norm < entry.0 {
            *entry = (norm, vec![c]);
        } else if norm == entry.0 {
            entry.1.push(c);
        }
    }
    let mut out: Vec<Vec<i64>> = best
        .into_values()
        .filter(|(_, minima)| minima.len() == 2)
        .flat_map(|(_, minima)| minima)
        .collect();
    out.sort();
    out
}

impl PermLattice {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n_sites(&self) -> usize {
        self.m.pow(self.d as u32)
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    pub fn neighbor_offsets(&self) -> &[Vec<i64>] {
        &self.offsets
    }

    /// Squared lengths of the neighbor offsets, in units where `|g_j|² = d/(d+1)`.
    pub fn neighbor_distance_classes(&self) -> Vec<f64> {
        let mut classes: Vec<i64> = self.offsets.iter().map(|c| scaled_norm(c)).collect();
        classes.sort_unstable();
        classes.dedup();
        classes
            .into_iter()
            .map(|s| s as f64 / (self.d + 1) as f64)
            .collect()
    }

    pub fn site_coords(&self, mut site: usize) -> Vec<i64> {
        (0..self.d)
            .map(|_| {
                let x = site % self.m;
                site /= self.m;
                x as i64
            })
            .collect()
    }

    pub fn site_index(&self, coords: &[i64]) -> usize {
        let m = self.m as i64;
        coords
            .iter()
            .rev()
            .fold(0i64, |acc, &x| acc * m + x.rem_euclid(m)) as usize
    }

    /// Position of a site in `R^d` (inside the fundamental domain of `m · basis`).
    pub fn site_position(&self, site: usize) -> Vec<f64> {
        let c = self.site_coords(site);
        (0..self.d)
            .map(|axis| {
                c.iter()
                    .zip(&self.basis)
                    .map(|(&cj, g)| cj as f64 * g[axis])
                    .sum()
            })
            .collect()
    }

    pub fn neighbors(&self, site: usize) -> Vec<usize> {
        let c = self.site_coords(site);
        self.offsets
            .iter()
            .map(|o| {
                let shifted: Vec<i64> = c.iter().zip(o).map(|(a, b)| a + b).collect();
                self.site_index(&shifted)
            })
            .collect()
    }

    pub fn site_grid(&self, site_values: Vec<f64>) -> SiteGrid {
        let adjacency = (0..self.n_sites()).map(|s| self.neighbors(s)).collect();
        SiteGrid {
            d: self.d,
            m: self.m,
            site_values,
            adjacency,
        }
    }
}

/// Builds the permutahedral torus with `m^d` sites.
pub fn gen_perm_lattice(d: usize, m: usize) -> Result<PermLattice> {
    check_site_args(d, m)?;
    // Helmert basis of the zero-sum hyperplane; the image of g_j is the j-th
    // column of the Helmert matrix.
    let helmert = |k: usize, j: usize| -> f64 {
        let norm = ((k * (k + 1)) as f64).sqrt();
        match j.cmp(&k) {
            std::cmp::Ordering::Less => 1.0 / norm,
            std::cmp::Ordering::Equal => -(k as f64) / norm,
            std::cmp::Ordering::Greater => 0.0,
        }
    };
    let basis = (1..=d)
        .map(|j| (1..=d).map(|k| helmert(k, j)).collect())
        .collect();
    let offsets = relevant_vectors(d);
    let expected = (1usize << (d + 1)) - 2;
    if offsets.len() != expected {
        return Err(Error::CliqueCountMismatch {
            dim: 1,
            expected,
            got: offsets.len(),
        });
    }
    Ok(PermLattice {
        d,
        m,
        basis,
        offsets,
    })
}

/// Number of k-simplices in the nerve of the permutahedral torus with `n`
/// sites: `n · k! · S(d+1, k+1)`.
pub fn nerve_simplex_count(d: usize, n: u64, k: usize) -> u64 {
    n * factorial(k) * stirling2(d + 1, k + 1)
}

/// The nerve-side permutahedral filtration: clique complex of the site
/// adjacency graph up to dimension `d`, with lower-star values.
pub fn gen_perm_complex(d: usize, m: usize, seed: u64) -> Result<FilteredComplex> {
    let lattice = gen_perm_lattice(d, m)?;
    let grid = lattice.site_grid(uniform_values(lattice.n_sites(), seed));
    let complex = perm_nerve(&grid)?;
    Ok(complex.with_meta(ModelDescriptor {
        model: Model::Perm,
        d,
        size: m as u64,
        seed,
    }))
}

/// Clique complex of a permutahedral site grid, checked against the Stirling
/// counts.
pub fn perm_nerve(grid: &SiteGrid) -> Result<FilteredComplex> {
    let adjacency: Vec<Vec<u32>> = grid
        .adjacency
        .iter()
        .map(|nbrs| {
            let mut a: Vec<u32> = nbrs.iter().map(|&s| s as u32).collect();
            a.sort_unstable();
            a.dedup();
            a
        })
        .collect();
    let values = &grid.site_values;
    let complex = flag_complex(
        &adjacency,
        grid.d,
        grid.d,
        ParamKind::SiteProbability,
        |s| {
            Some(
                s.iter()
                    .map(|&v| values[v as usize])
                    .fold(f64::NEG_INFINITY, f64::max),
            )
        },
    );
    let counts = complex.counts_by_dim();
    let n = grid.n() as u64;
    for k in 0..=grid.d {
        let expected = nerve_simplex_count(grid.d, n, k) as usize;
        let got = counts.get(k).copied().unwrap_or(0);
        if got != expected {
            return Err(Error::CliqueCountMismatch {
                dim: k,
                expected,
                got,
            });
        }
    }
    Ok(complex)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagonal_lattice() {
        let lat = gen_perm_lattice(2, 3).unwrap();
        assert_eq!(lat.n_sites(), 9);
        for s in 0..9 {
            let mut nb = lat.neighbors(s);
            nb.sort_unstable();
            nb.dedup();
            assert_eq!(nb.len(), 6);
            assert!(!nb.contains(&s));
        }
        // All six neighbors of the hexagonal lattice are equidistant.
        assert_eq!(lat.neighbor_distance_classes(), vec![2.0 / 3.0]);
    }

    #[test]
    fn facet_counts_in_higher_dimensions() {
        for (d, facets) in [(3, 14), (4, 30)] {
            for m in [3, 4, 5] {
                let lat = gen_perm_lattice(d, m).unwrap();
                let mut nb = lat.neighbors(7);
                nb.sort_unstable();
                nb.dedup();
                assert_eq!(nb.len(), facets, "d={d} m={m}");
            }
        }
        // bcc: 8 neighbors at distance² 3/4 and 6 at 1.
        let lat = gen_perm_lattice(3, 4).unwrap();
        assert_eq!(lat.neighbor_distance_classes(), vec![0.75, 1.0]);
        let lat = gen_perm_lattice(4, 4).unwrap();
        assert_eq!(lat.neighbor_distance_classes(), vec![0.8, 1.2]);
    }

    #[test]
    fn adjacency_is_symmetric() {
        let lat = gen_perm_lattice(3, 4).unwrap();
        for s in 0..lat.n_sites() {
            for t in lat.neighbors(s) {
                assert!(lat.neighbors(t).contains(&s));
            }
        }
    }

    #[test]
    fn basis_is_an_isometric_image() {
        // |g_j|² = d/(d+1) and g_i · g_j = -1/(d+1).
        let d = 4;
        let lat = gen_perm_lattice(d, 3).unwrap();
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        for i in 0..d {
            for j in 0..d {
                let expect = if i == j { d as f64 } else { -1.0 } / (d + 1) as f64;
                assert!((dot(&lat.basis()[i], &lat.basis()[j]) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn stirling_counts_d2_d3() {
        let c = gen_perm_complex(2, 5, 1).unwrap();
        assert_eq!(c.counts_by_dim(), vec![25, 75, 50]);
        let c = gen_perm_complex(3, 4, 1).unwrap();
        let n = 64;
        assert_eq!(c.counts_by_dim(), vec![n, 7 * n, 12 * n, 6 * n]);
        let chi: i64 = c
            .counts_by_dim()
            .iter()
            .enumerate()
            .map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) })
            .sum();
        assert_eq!(chi, 0);
    }

    #[test]
    fn wraparound_cliques_are_caught() {
        // On a 3-periodic hexagonal torus, three collinear sites close up into
        // a spurious triangle.
        assert!(matches!(
            gen_perm_complex(2, 3, 0),
            Err(Error::CliqueCountMismatch { dim: 2, .. })
        ));
    }

    #[test]
    fn lower_star_values() {
        let c = gen_perm_complex(2, 4, 9).unwrap();
        c.validate().unwrap();
        for cell in c.cells().iter().filter(|c| c.dim > 0) {
            let max_face = cell
                .boundary
                .iter()
                .map(|&b| c.cell(b).value)
                .fold(f64::NEG_INFINITY, f64::max);
            assert_eq!(cell.value, max_face);
        }
    }
}

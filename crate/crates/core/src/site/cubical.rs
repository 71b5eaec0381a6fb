//! Periodic cubical grids on the torus.
//!
//! A k-cell is addressed by a base vertex `v` and a direction mask `S` with
//! `|S| = k`; it spans `v + Σ_{i∈S} ε_i e_i` for `ε ∈ {0,1}^S`. Top cells
//! (full mask) are the sites of the cubical model, identified with their base
//! vertex.

use crate::combinatorics::binomial;
use crate::complex::{FilteredComplex, Model, ModelDescriptor, ParamKind};
use crate::error::{Error, Result};
use crate::rng::uniform_values;
use crate::site::check_site_args;

#[derive(Debug, Clone)]
pub struct CubicalTorus {
    d: usize,
    m: usize,
    n: usize,
    /// Masks ordered by (popcount, mask); cell ids follow this order.
    masks: Vec<usize>,
    mask_offset: Vec<usize>,
}

impl CubicalTorus {
    pub fn new(d: usize, m: usize) -> Result<Self> {
        if d == 0 || d > 8 {
            return Err(Error::UnsupportedDimension(d));
        }
        if m < 3 {
            return Err(Error::SizeTooSmall { min: 3, got: m });
        }
        let n = m.pow(d as u32);
        let mut masks: Vec<usize> = (0..1usize << d).collect();
        masks.sort_by_key(|&s| (s.count_ones(), s));
        let mut mask_offset = vec![0; 1 << d];
        for (i, &s) in masks.iter().enumerate() {
            mask_offset[s] = i * n;
        }
        Ok(CubicalTorus {
            d,
            m,
            n,
            masks,
            mask_offset,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of vertices, equal to the number of top cells.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cell_count(&self, k: usize) -> usize {
        self.n * binomial(self.d, k) as usize
    }

    pub fn cell_id(&self, mask: usize, vertex: usize) -> usize {
        self.mask_offset[mask] + vertex
    }

    pub fn coords(&self, mut vertex: usize) -> Vec<usize> {
        let mut c = vec![0; self.d];
        for x in c.iter_mut() {
            *x = vertex % self.m;
            vertex /= self.m;
        }
        c
    }

    pub fn vertex(&self, coords: &[usize]) -> usize {
        coords.iter().rev().fold(0, |acc, &x| acc * self.m + x)
    }

    /// Vertex shifted by `±1` along `axis`, wrapping around.
    pub fn shift(&self, vertex: usize, axis: usize, forward: bool) -> usize {
        let stride = self.m.pow(axis as u32);
        let x = (vertex / stride) % self.m;
        if forward {
            if x + 1 == self.m {
                vertex + stride - self.m * stride
            } else {
                vertex + stride
            }
        } else if x == 0 {
            vertex + (self.m - 1) * stride
        } else {
            vertex - stride
        }
    }

    /// Every vertex `v + Σ ε_i e_i` reachable by stepping along the axes of
    /// `axes`, either forwards or backwards.
    fn corner_sweep(&self, vertex: usize, axes: usize, forward: bool) -> Vec<usize> {
        let mut out = vec![vertex];
        for axis in 0..self.d {
            if axes & (1 << axis) != 0 {
                let shifted: Vec<usize> =
                    out.iter().map(|&v| self.shift(v, axis, forward)).collect();
                out.extend(shifted);
            }
        }
        out
    }

    /// The `2^k` vertices of cell `(mask, vertex)`.
    pub fn cell_vertices(&self, mask: usize, vertex: usize) -> Vec<usize> {
        self.corner_sweep(vertex, mask, true)
    }

    /// Base vertices of the `2^(d-k)` top cells containing `(mask, vertex)`.
    pub fn incident_sites(&self, mask: usize, vertex: usize) -> Vec<usize> {
        let full = (1 << self.d) - 1;
        self.corner_sweep(vertex, full & !mask, false)
    }

    /// Facets of `(mask, vertex)` as cell ids.
    pub fn boundary(&self, mask: usize, vertex: usize) -> Vec<usize> {
        let mut faces = Vec::with_capacity(2 * mask.count_ones() as usize);
        for axis in 0..self.d {
            if mask & (1 << axis) != 0 {
                let face = mask & !(1 << axis);
                faces.push(self.cell_id(face, vertex));
                faces.push(self.cell_id(face, self.shift(vertex, axis, true)));
            }
        }
        faces
    }

    /// Builds the full complex; `value(mask, vertex)` gives each cell's value.
    pub fn build(
        &self,
        param_kind: ParamKind,
        mut value: impl FnMut(usize, usize) -> f64,
    ) -> FilteredComplex {
        let total = self.n << self.d;
        let mut complex = FilteredComplex::with_capacity(self.d, param_kind, total);
        for &mask in &self.masks {
            for v in 0..self.n {
                let id = complex.push(
                    mask.count_ones() as usize,
                    self.boundary(mask, v),
                    value(mask, v),
                );
                debug_assert_eq!(id, self.cell_id(mask, v));
            }
        }
        complex
    }

    /// Site-model complex: each face enters with its first open incident site.
    pub fn site_complex(&self, site_values: &[f64]) -> FilteredComplex {
        assert_eq!(site_values.len(), self.n);
        self.build(ParamKind::SiteProbability, |mask, v| {
            self.incident_sites(mask, v)
                .into_iter()
                .map(|s| site_values[s])
                .fold(f64::INFINITY, f64::min)
        })
    }

    /// Lower-star complex: each cell enters with its last vertex.
    pub fn sublevel_complex(&self, vertex_values: &[f64]) -> FilteredComplex {
        assert_eq!(vertex_values.len(), self.n);
        self.build(ParamKind::Level, |mask, v| {
            self.cell_vertices(mask, v)
                .into_iter()
                .map(|u| vertex_values[u])
                .fold(f64::NEG_INFINITY, f64::max)
        })
    }

    /// Sites sharing a facet with `site` (2d of them).
    pub fn facet_neighbors(&self, site: usize) -> Vec<usize> {
        (0..self.d)
            .flat_map(|axis| [self.shift(site, axis, true), self.shift(site, axis, false)])
            .collect()
    }

    /// Sites sharing any face with `site` (3^d - 1 of them).
    pub fn face_neighbors(&self, site: usize) -> Vec<usize> {
        let mut out = vec![site];
        for axis in 0..self.d {
            let mut next = Vec::with_capacity(out.len() * 3);
            for &v in &out {
                next.push(v);
                next.push(self.shift(v, axis, true));
                next.push(self.shift(v, axis, false));
            }
            out = next;
        }
        out.retain(|&v| v != site);
        out
    }
}

/// The random cubical complex `Q(n, p)` on an `m^d` periodic grid, as a
/// filtration in `p` driven by one uniform value per site.
pub fn gen_cubical_complex(d: usize, m: usize, seed: u64) -> Result<FilteredComplex> {
    check_site_args(d, m)?;
    let grid = CubicalTorus::new(d, m)?;
    let sites = uniform_values(grid.n(), seed);
    Ok(grid.site_complex(&sites).with_meta(ModelDescriptor {
        model: Model::Cubical,
        d,
        size: m as u64,
        seed,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::euler_curve_from_counts;

    #[test]
    fn three_by_three_counts() {
        let c = gen_cubical_complex(2, 3, 1).unwrap();
        assert_eq!(c.counts_by_dim(), vec![9, 18, 9]);
    }

    #[test]
    fn generated_complex_validates() {
        for d in 2..=4 {
            let c = gen_cubical_complex(d, 4, 7).unwrap();
            c.validate().unwrap();
        }
    }

    #[test]
    fn edge_value_is_min_of_adjacent_squares() {
        let grid = CubicalTorus::new(2, 3).unwrap();
        let sites = uniform_values(9, 11);
        let c = grid.site_complex(&sites);
        let top = 0b11;
        for cell in c.cells().iter().filter(|c| c.dim == 1) {
            // The squares containing an edge are exactly the top cells whose
            // boundary lists it.
            let squares: Vec<f64> = (0..9)
                .filter(|&v| {
                    c.cell(grid.cell_id(top, v))
                        .boundary
                        .iter()
                        .any(|&b| std::ptr::eq(c.cell(b), cell))
                })
                .map(|v| sites[v])
                .collect();
            assert_eq!(squares.len(), 2);
            assert_eq!(cell.value, squares[0].min(squares[1]));
        }
    }

    #[test]
    fn full_torus_has_zero_ec() {
        for (d, m) in [(2, 3), (3, 3), (4, 3)] {
            let c = gen_cubical_complex(d, m, 5).unwrap();
            assert_eq!(euler_curve_from_counts(&c).eval(1.0), 0.0);
        }
    }

    #[test]
    fn neighbor_counts() {
        for d in 2..=4 {
            let grid = CubicalTorus::new(d, 4).unwrap();
            assert_eq!(grid.facet_neighbors(5).len(), 2 * d);
            let mut all = grid.face_neighbors(5);
            all.sort_unstable();
            all.dedup();
            assert_eq!(all.len(), 3usize.pow(d as u32) - 1);
        }
    }

    #[test]
    fn small_grid_rejected() {
        assert!(matches!(
            gen_cubical_complex(2, 2, 0),
            Err(Error::SizeTooSmall { min: 3, got: 2 })
        ));
        assert!(matches!(
            gen_cubical_complex(5, 3, 0),
            Err(Error::UnsupportedDimension(5))
        ));
    }

    #[test]
    fn coords_round_trip() {
        let grid = CubicalTorus::new(3, 5).unwrap();
        for v in 0..grid.n() {
            assert_eq!(grid.vertex(&grid.coords(v)), v);
        }
        assert_eq!(grid.shift(4, 0, true), 0);
        assert_eq!(grid.shift(0, 0, false), 4);
    }
}

//! Site percolation on the torus: the cubical complex `Q(n, p)` and the
//! permutahedral complex `P(n, p)`, both coupled across `p` through one
//! uniform value per site.

pub mod cubical;
pub mod perm;

pub use cubical::{gen_cubical_complex, CubicalTorus};
pub use perm::{gen_perm_complex, gen_perm_lattice, nerve_simplex_count, PermLattice};

use crate::combinatorics::{binomial, factorial, stirling2};
use crate::complex::{FilteredComplex, Model};
use crate::error::{Error, Result};

/// Sites of a periodic lattice with their uniform values and facet adjacency.
#[derive(Debug, Clone)]
pub struct SiteGrid {
    pub d: usize,
    pub m: usize,
    pub site_values: Vec<f64>,
    pub adjacency: Vec<Vec<usize>>,
}

impl SiteGrid {
    pub fn n(&self) -> usize {
        self.site_values.len()
    }

    /// Sites open at `p` (`U_i <= p`).
    pub fn open_sites(&self, p: f64) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| self.site_values[i] <= p)
            .collect()
    }
}

pub(crate) fn check_site_args(d: usize, m: usize) -> Result<()> {
    if !(2..=4).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    if m < 3 {
        return Err(Error::SizeTooSmall { min: 3, got: m });
    }
    Ok(())
}

/// `E χ(Q(n, p)) = n Σ_k (-1)^k C(d,k) (1 - (1-p)^{2^{d-k}})`.
pub fn expected_ec_cubical(d: usize, n: f64, p: f64) -> f64 {
    let q = 1.0 - p;
    n * (0..=d)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(d, k) as f64 * (1.0 - q.powi(1 << (d - k)))
        })
        .sum::<f64>()
}

/// Number of k-faces of the permutahedral tessellation with `n` sites.
///
/// A single permutahedron has `(d+1-k)! S(d+1, d+1-k)` k-faces, each shared
/// by `d+1-k` sites.
pub fn perm_face_count(d: usize, n: u64, k: usize) -> u64 {
    assert!(k <= d);
    let j = d + 1 - k;
    n * factorial(j) * stirling2(d + 1, j) / j as u64
}

/// `E χ(P(n, p))`: a k-face is present iff one of its `d+1-k` sites is open.
pub fn expected_ec_perm(d: usize, n: f64, p: f64) -> f64 {
    let q = 1.0 - p;
    (0..=d)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * perm_face_count(d, 1, k) as f64 * (1.0 - q.powi((d + 1 - k) as i32))
        })
        .sum::<f64>()
        * n
}

/// Same complex with every site value `U` replaced by `1 - U`.
///
/// At parameter `1 - p` the result is the closure of the complement of the
/// original at `p`. Cubical faces take the minimum over incident sites;
/// permutahedral nerve simplices take the maximum over their vertices.
pub fn complement_filtration(c: &FilteredComplex) -> Result<FilteredComplex> {
    let model = c
        .meta
        .as_ref()
        .map(|m| m.model)
        .ok_or_else(|| Error::InvalidArgument("complex carries no model descriptor".into()))?;
    let cells = c.cells();
    let mut values: Vec<f64> = cells.iter().map(|cell| cell.value).collect();
    match model {
        Model::Cubical => {
            let top = c.ambient_dim;
            let mut order: Vec<usize> = (0..cells.len()).collect();
            order.sort_by_key(|&id| std::cmp::Reverse(cells[id].dim));
            for &id in &order {
                if cells[id].dim == top {
                    values[id] = 1.0 - cells[id].value;
                } else {
                    values[id] = f64::INFINITY;
                }
            }
            for &id in &order {
                let v = values[id];
                for &b in &cells[id].boundary {
                    values[b] = values[b].min(v);
                }
            }
        }
        Model::Perm => {
            let mut order: Vec<usize> = (0..cells.len()).collect();
            order.sort_by_key(|&id| cells[id].dim);
            for &id in &order {
                values[id] = if cells[id].dim == 0 {
                    1.0 - cells[id].value
                } else {
                    cells[id]
                        .boundary
                        .iter()
                        .map(|&b| values[b])
                        .fold(f64::NEG_INFINITY, f64::max)
                };
            }
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "complement is defined for site models, not `{other}`"
            )))
        }
    }
    let mut out = c.clone();
    out.set_values(&values);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ModelDescriptor;

    #[test]
    fn cubical_formula_values() {
        assert_eq!(expected_ec_cubical(2, 1.0, 1.0), 0.0);
        assert!((expected_ec_cubical(2, 1.0, 0.5) + 0.0625).abs() < 1e-15);
        let root = (3.0 - 5f64.sqrt()) / 2.0;
        assert!(expected_ec_cubical(2, 100.0, root).abs() < 1e-9);
    }

    #[test]
    fn perm_face_counts() {
        assert_eq!(perm_face_count(2, 10, 0), 20);
        assert_eq!(perm_face_count(3, 10, 1), 120);
        assert_eq!(perm_face_count(3, 10, 2), 70);
        // Nerve duality: k-faces of the tessellation are (d-k)-simplices.
        for d in 2..=4 {
            for k in 0..=d {
                assert_eq!(perm_face_count(d, 5, k), nerve_simplex_count(d, 5, d - k));
            }
        }
    }

    #[test]
    fn perm_formula_values() {
        assert!(expected_ec_perm(2, 1.0, 0.5).abs() < 1e-15);
        assert!((expected_ec_perm(2, 1.0, 0.25) - 0.09375).abs() < 1e-15);
        for d in [2, 4] {
            assert_eq!(expected_ec_perm(d, 37.0, 0.5), 0.0);
        }
    }

    #[test]
    fn perm_formula_d2_matches_expanded_polynomial() {
        // 2(1-q³) - 3(1-q²) + (1-q) = -2q³ + 3q² - q with q = 1-p.
        for i in 0..=100 {
            let p = i as f64 / 100.0;
            let q = 1.0 - p;
            let poly = -2.0 * q * q * q + 3.0 * q * q - q;
            assert!((expected_ec_perm(2, 1.0, p) - poly).abs() < 1e-14);
        }
    }

    #[test]
    fn complement_is_an_involution() {
        for c in [
            gen_cubical_complex(2, 4, 3).unwrap(),
            gen_perm_complex(2, 4, 3).unwrap(),
        ] {
            let twice = complement_filtration(&complement_filtration(&c).unwrap()).unwrap();
            assert_eq!(twice, c);
        }
    }

    #[test]
    fn complement_needs_a_site_model() {
        let mut c = gen_cubical_complex(2, 3, 0).unwrap();
        c.meta = Some(ModelDescriptor {
            model: Model::Grf,
            d: 2,
            size: 3,
            seed: 0,
        });
        assert!(complement_filtration(&c).is_err());
        c.meta = None;
        assert!(complement_filtration(&c).is_err());
    }

    #[test]
    fn coupling_is_monotone() {
        let c = gen_cubical_complex(3, 4, 12).unwrap();
        let grid = [0.1, 0.3, 0.5, 0.7, 0.9];
        for w in grid.windows(2) {
            let lo = c.sublevel(w[0]);
            let hi = c.sublevel(w[1]);
            assert!(lo.iter().all(|id| hi.binary_search(id).is_ok()));
        }
    }
}

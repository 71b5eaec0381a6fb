//! Persistent homology over the two-element field.
//!
//! Cells are ordered by `(value, dim, id)` and the boundary matrix is reduced
//! column by column. Columns are sorted lists of row positions and column
//! addition is symmetric difference. The clearing ("twist") variant reduces
//! the highest dimension first and zeroes every column whose index already
//! appeared as a pivot; it produces exactly the same pairing.

use serde::{Deserialize, Serialize};

use crate::complex::FilteredComplex;
use crate::error::Result;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub birth: f64,
    /// `f64::INFINITY` for essential classes.
    pub death: f64,
}

impl Interval {
    pub fn is_essential(&self) -> bool {
        self.death == f64::INFINITY
    }

    /// Whether the class is alive at `t`, i.e. `birth <= t < death`.
    pub fn contains(&self, t: f64) -> bool {
        self.birth <= t && t < self.death
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reduction {
    Standard,
    #[default]
    Twist,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Barcode {
    pub ambient_dim: usize,
    intervals: Vec<Vec<Interval>>,
    /// Number of dropped `birth == death` pairs per degree.
    pub zero_length: Vec<usize>,
}

impl Barcode {
    pub fn new(ambient_dim: usize, intervals: Vec<Vec<Interval>>) -> Self {
        let zero_length = vec![0; intervals.len()];
        let mut b = Barcode {
            ambient_dim,
            intervals,
            zero_length,
        };
        b.sort();
        b
    }

    fn sort(&mut self) {
        for bars in &mut self.intervals {
            bars.sort_by(|a, b| {
                a.birth
                    .total_cmp(&b.birth)
                    .then(a.death.total_cmp(&b.death))
            });
        }
    }

    /// Highest degree the barcode covers.
    pub fn max_degree(&self) -> usize {
        self.intervals.len().saturating_sub(1)
    }

    /// Intervals of degree `k` (empty beyond `max_degree`).
    pub fn degree(&self, k: usize) -> &[Interval] {
        self.intervals.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn essential_count(&self, k: usize) -> usize {
        self.degree(k).iter().filter(|i| i.is_essential()).count()
    }
}

/// Persistence in degrees `0..=max_degree`, using the clearing optimization.
pub fn compute_persistence(c: &FilteredComplex, max_degree: usize) -> Result<Barcode> {
    compute_persistence_with(c, max_degree, Reduction::Twist)
}

pub fn compute_persistence_with(
    c: &FilteredComplex,
    max_degree: usize,
    reduction: Reduction,
) -> Result<Barcode> {
    c.validate()?;

    let order: Vec<usize> = c
        .filtration_order()
        .into_iter()
        .filter(|&id| c.cell(id).dim <= max_degree + 1)
        .collect();
    let mut position = vec![NONE; c.len()];
    for (p, &id) in order.iter().enumerate() {
        position[id] = p as u32;
    }
    let mut columns: Vec<Vec<u32>> = order
        .iter()
        .map(|&id| {
            let mut col: Vec<u32> = c.cell(id).boundary.iter().map(|&b| position[b]).collect();
            col.sort_unstable();
            col.dedup();
            cancel_pairs(&mut col, &c.cell(id).boundary, &position);
            col
        })
        .collect();
    let dims: Vec<usize> = order.iter().map(|&id| c.cell(id).dim).collect();

    let mut pivot_owner = vec![NONE; order.len()];
    match reduction {
        Reduction::Standard => {
            let mut scratch = Vec::new();
            for j in 0..columns.len() {
                reduce_column(j, &mut columns, &mut pivot_owner, &mut scratch);
            }
        }
        Reduction::Twist => {
            let mut cleared = vec![false; columns.len()];
            let mut scratch = Vec::new();
            for q in (1..=max_degree + 1).rev() {
                for j in 0..columns.len() {
                    if dims[j] != q || cleared[j] {
                        continue;
                    }
                    if let Some(pivot) =
                        reduce_column(j, &mut columns, &mut pivot_owner, &mut scratch)
                    {
                        cleared[pivot as usize] = true;
                        columns[pivot as usize].clear();
                    }
                }
            }
        }
    }

    let mut intervals = vec![Vec::new(); max_degree + 1];
    let mut zero_length = vec![0; max_degree + 1];
    for (p, &id) in order.iter().enumerate() {
        let dim = dims[p];
        if dim > max_degree || !columns[p].is_empty() {
            continue;
        }
        let birth = c.cell(id).value;
        let owner = pivot_owner[p];
        let death = if owner == NONE {
            f64::INFINITY
        } else {
            c.cell(order[owner as usize]).value
        };
        if birth == death {
            zero_length[dim] += 1;
        } else {
            intervals[dim].push(Interval { birth, death });
        }
    }

    let mut barcode = Barcode::new(c.ambient_dim, intervals);
    barcode.zero_length = zero_length;
    Ok(barcode)
}

/// `dedup` leaves one copy of a repeated face; over GF(2) an even number of
/// copies must vanish entirely.
fn cancel_pairs(col: &mut Vec<u32>, boundary: &[usize], position: &[u32]) {
    if col.len() == boundary.len() {
        return;
    }
    col.retain(|&p| boundary.iter().filter(|&&b| position[b] == p).count() % 2 == 1);
}

/// Reduces column `j` against earlier pivots; returns its final pivot.
fn reduce_column(
    j: usize,
    columns: &mut [Vec<u32>],
    pivot_owner: &mut [u32],
    scratch: &mut Vec<u32>,
) -> Option<u32> {
    let mut col = std::mem::take(&mut columns[j]);
    let pivot = loop {
        let Some(&low) = col.last() else {
            break None;
        };
        let owner = pivot_owner[low as usize];
        if owner == NONE {
            pivot_owner[low as usize] = j as u32;
            break Some(low);
        }
        symmetric_difference(&col, &columns[owner as usize], scratch);
        std::mem::swap(&mut col, scratch);
    };
    columns[j] = col;
    pivot
}

fn symmetric_difference(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    out.reserve(a.len() + b.len());
    let (mut i, mut k) = (0, 0);
    while i < a.len() && k < b.len() {
        match a[i].cmp(&b[k]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[k]);
                k += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                k += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[k..]);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ParamKind;

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
    fn one_vertex() {
        let mut c = FilteredComplex::new(2, ParamKind::Level);
        c.push(0, vec![], 0.0);
        let b = compute_persistence(&c, 0).unwrap();
        assert_eq!(
            b.degree(0),
            &[Interval {
                birth: 0.0,
                death: f64::INFINITY
            }]
        );
    }

    #[test]
    fn hand_reduced_cycle_graph() {
        // Columns of the three edges: {0,1}, {1,2}, {0,2}. The third reduces
        // to zero after adding the first two, so it creates the 1-cycle.
        let c = cycle_graph();
        for r in [Reduction::Standard, Reduction::Twist] {
            let b = compute_persistence_with(&c, 1, r).unwrap();
            let inf = f64::INFINITY;
            assert_eq!(
                b.degree(0),
                &[
                    Interval {
                        birth: 0.0,
                        death: 1.0
                    },
                    Interval {
                        birth: 0.0,
                        death: 1.0
                    },
                    Interval {
                        birth: 0.0,
                        death: inf
                    },
                ]
            );
            assert_eq!(
                b.degree(1),
                &[Interval {
                    birth: 1.0,
                    death: inf
                }]
            );
            assert_eq!(b.zero_length, vec![0, 0]);
        }
    }

    #[test]
    fn filled_triangle_drops_zero_length_bar() {
        let mut c = cycle_graph();
        c.push(2, vec![3, 4, 5], 1.0);
        let b = compute_persistence(&c, 1).unwrap();
        assert!(b.degree(1).is_empty());
        assert_eq!(b.zero_length[1], 1);
    }

    #[test]
    fn repeated_faces_cancel() {
        // A loop edge whose boundary lists the same vertex twice is a cycle.
        let mut c = FilteredComplex::new(1, ParamKind::Level);
        c.push(0, vec![], 0.0);
        c.push(1, vec![0, 0], 0.5);
        let b = compute_persistence(&c, 1).unwrap();
        assert_eq!(b.essential_count(1), 1);
        assert_eq!(b.essential_count(0), 1);
    }

    #[test]
    fn invalid_complex_is_rejected() {
        let mut c = FilteredComplex::new(1, ParamKind::Level);
        c.push(0, vec![], 1.0);
        c.push(1, vec![0, 0], 0.5);
        assert!(compute_persistence(&c, 1).is_err());
    }

    #[test]
    fn symmetric_difference_merges() {
        let mut out = Vec::new();
        symmetric_difference(&[1, 3, 5], &[3, 4], &mut out);
        assert_eq!(out, vec![1, 4, 5]);
    }
}

//! Clique enumeration into a [`FilteredComplex`].
//!
//! Used for the permutahedral nerve (flag complex of the site adjacency
//! graph) and for Čech complexes (cliques of the `2 r_max` neighbor graph,
//! filtered by enclosing-ball radius).

use crate::complex::{FilteredComplex, ParamKind};

/// Sorted vertex tuple padded with `u32::MAX`; supports up to 6 vertices.
type Key = [u32; MAX_VERTICES];
const MAX_VERTICES: usize = 6;

fn key(vertices: &[u32]) -> Key {
    let mut k = [u32::MAX; MAX_VERTICES];
    k[..vertices.len()].copy_from_slice(vertices);
    k
}

/// Enumerates cliques of dimension `<= max_dim` in the graph given by sorted
/// `adjacency` lists.
///
/// `value` receives each candidate simplex (sorted vertex ids) and returns its
/// filtration value or `None` to drop it. Cofaces of dropped simplices are
/// never visited, so `value` must describe a downward-closed family. Stored
/// values are raised to the maximum over their facets, which absorbs rounding
/// in geometric value functions.
pub fn flag_complex(
    adjacency: &[Vec<u32>],
    max_dim: usize,
    ambient_dim: usize,
    param_kind: ParamKind,
    mut value: impl FnMut(&[u32]) -> Option<f64>,
) -> FilteredComplex {
    assert!(max_dim < MAX_VERTICES);
    let n = adjacency.len();
    // simplices[k] holds (vertices, value) for accepted k-simplices.
    let mut simplices: Vec<Vec<(Key, f64)>> = vec![Vec::new(); max_dim + 1];
    let mut stack: Vec<u32> = Vec::with_capacity(max_dim + 1);

    fn extend(
        stack: &mut Vec<u32>,
        candidates: &[u32],
        adjacency: &[Vec<u32>],
        max_dim: usize,
        simplices: &mut [Vec<(Key, f64)>],
        value: &mut dyn FnMut(&[u32]) -> Option<f64>,
    ) {
        if stack.len() > max_dim {
            return;
        }
        for (i, &w) in candidates.iter().enumerate() {
            stack.push(w);
            if let Some(v) = value(stack) {
                simplices[stack.len() - 1].push((key(stack), v));
                let next: Vec<u32> = candidates[i + 1..]
                    .iter()
                    .copied()
                    .filter(|c| adjacency[w as usize].binary_search(c).is_ok())
                    .collect();
                extend(stack, &next, adjacency, max_dim, simplices, value);
            }
            stack.pop();
        }
    }

    for v in 0..n as u32 {
        stack.push(v);
        let Some(val) = value(&stack) else {
            stack.pop();
            continue;
        };
        simplices[0].push((key(&stack), val));
        let higher: Vec<u32> = adjacency[v as usize]
            .iter()
            .copied()
            .filter(|&w| w > v)
            .collect();
        extend(
            &mut stack,
            &higher,
            adjacency,
            max_dim,
            &mut simplices,
            &mut value,
        );
        stack.pop();
    }

    assemble(simplices, ambient_dim, param_kind)
}

/// Assigns ids dimension by dimension and resolves facet ids.
fn assemble(
    simplices: Vec<Vec<(Key, f64)>>,
    ambient_dim: usize,
    param_kind: ParamKind,
) -> FilteredComplex {
    let total = simplices.iter().map(Vec::len).sum();
    let mut complex = FilteredComplex::with_capacity(ambient_dim, param_kind, total);
    // Accepted simplices of the previous dimension, sorted by key.
    let mut previous: Vec<(Key, usize)> = Vec::new();
    for (dim, mut level) in simplices.into_iter().enumerate() {
        level.sort_unstable_by_key(|a| a.0);
        let mut current = Vec::with_capacity(level.len());
        let mut boundary = Vec::with_capacity(dim + 1);
        let facets = if dim == 0 { 0 } else { dim + 1 };
        'simplex: for (k, mut v) in level {
            boundary.clear();
            for skip in 0..facets {
                let mut face = [u32::MAX; MAX_VERTICES];
                let mut j = 0;
                for (i, &x) in k[..=dim].iter().enumerate() {
                    if i != skip {
                        face[j] = x;
                        j += 1;
                    }
                }
                match previous.binary_search_by(|(fk, _)| fk.cmp(&face)) {
                    Ok(pos) => boundary.push(previous[pos].1),
                    // A facet rejected on another branch (rounding at the
                    // cutoff) takes the simplex with it.
                    Err(_) => continue 'simplex,
                }
            }
            for &b in &boundary {
                v = v.max(complex.cell(b).value);
            }
            let id = complex.push(dim, boundary.clone(), v);
            current.push((k, id));
        }
        previous = current;
    }
    complex
}

/// Vertex tuple of a simplex cell, recovered from its boundary.
pub fn simplex_vertices(c: &FilteredComplex, id: usize) -> Vec<usize> {
    let cell = c.cell(id);
    if cell.dim == 0 {
        return vec![id];
    }
    let mut out: Vec<usize> = cell
        .boundary
        .iter()
        .flat_map(|&b| simplex_vertices(c, b))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

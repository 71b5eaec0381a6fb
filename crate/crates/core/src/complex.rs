//! Filtered cell complexes.
//!
//! A [`FilteredComplex`] is a flat list of cells, each carrying its dimension,
//! the ids of its codimension-1 faces, and the parameter value at which it
//! enters the filtration. Cell ids are dense indices into the list. The same
//! representation serves cubical complexes, clique (nerve) complexes and Čech
//! complexes, so the persistence engine never needs to know which model
//! produced its input.

use std::cmp::Ordering;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The four random filtration models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Cubical,
    Perm,
    Boolean,
    Grf,
}

impl Model {
    pub const ALL: [Model; 4] = [Model::Cubical, Model::Perm, Model::Boolean, Model::Grf];

    pub fn as_str(self) -> &'static str {
        match self {
            Model::Cubical => "cubical",
            Model::Perm => "perm",
            Model::Boolean => "boolean",
            Model::Grf => "grf",
        }
    }

    /// The filtration parameter the model is indexed by.
    pub fn param_kind(self) -> ParamKind {
        match self {
            Model::Cubical | Model::Perm => ParamKind::SiteProbability,
            Model::Boolean => ParamKind::Radius,
            Model::Grf => ParamKind::Level,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cubical" => Ok(Model::Cubical),
            "perm" | "permutahedral" => Ok(Model::Perm),
            "boolean" => Ok(Model::Boolean),
            "grf" | "gaussian" => Ok(Model::Grf),
            other => Err(Error::InvalidArgument(format!("unknown model `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamKind {
    /// Site-opening probability `p`.
    SiteProbability,
    /// Ball radius `r` (converted to `λ` only when reporting).
    Radius,
    /// Field level `α`.
    Level,
}

/// Which generator produced a complex, and with what inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDescriptor {
    pub model: Model,
    pub d: usize,
    pub size: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub dim: usize,
    /// Ids of the codimension-1 faces.
    pub boundary: Vec<usize>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex {
    pub ambient_dim: usize,
    pub param_kind: ParamKind,
    pub meta: Option<ModelDescriptor>,
    cells: Vec<Cell>,
}

/// Summary returned by a successful [`FilteredComplex::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub cells: usize,
    pub counts_by_dim: Vec<usize>,
    pub min_value: f64,
    pub max_value: f64,
}

impl FilteredComplex {
    pub fn new(ambient_dim: usize, param_kind: ParamKind) -> Self {
        FilteredComplex {
            ambient_dim,
            param_kind,
            meta: None,
            cells: Vec::new(),
        }
    }

    pub fn with_capacity(ambient_dim: usize, param_kind: ParamKind, capacity: usize) -> Self {
        FilteredComplex {
            cells: Vec::with_capacity(capacity),
            ..Self::new(ambient_dim, param_kind)
        }
    }

    pub fn with_meta(mut self, meta: ModelDescriptor) -> Self {
        self.meta = Some(meta);
        self
    }

    /// Appends a cell and returns its id.
    pub fn push(&mut self, dim: usize, boundary: Vec<usize>, value: f64) -> usize {
        self.cells.push(Cell {
            dim,
            boundary,
            value,
        });
        self.cells.len() - 1
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: usize) -> &Cell {
        &self.cells[id]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Highest cell dimension present, `None` for an empty complex.
    pub fn top_dim(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.top_dim().map_or(0, |d| d + 1)];
        for c in &self.cells {
            counts[c.dim] += 1;
        }
        counts
    }

    /// Replaces every cell value, keeping the combinatorics.
    pub(crate) fn set_values(&mut self, values: &[f64]) {
        assert_eq!(values.len(), self.cells.len());
        for (c, &v) in self.cells.iter_mut().zip(values) {
            c.value = v;
        }
    }

    /// Checks the boundary dimension rule and filtration monotonicity.
    ///
    /// Together these guarantee that sorting by `(value, dim, id)` puts every
    /// face before its cofaces.
    pub fn validate(&self) -> Result<ValidationReport> {
        let mut min_value = f64::INFINITY;
        let mut max_value = f64::NEG_INFINITY;
        for (id, cell) in self.cells.iter().enumerate() {
            if cell.value.is_nan() {
                return Err(Error::NonMonotoneFiltration { cell: id });
            }
            if cell.dim == 0 && !cell.boundary.is_empty() {
                return Err(Error::DanglingBoundary { cell: id });
            }
            for &b in &cell.boundary {
                let face = self
                    .cells
                    .get(b)
                    .filter(|f| f.dim + 1 == cell.dim)
                    .ok_or(Error::DanglingBoundary { cell: id })?;
                if face.value > cell.value || face.value.is_nan() {
                    return Err(Error::NonMonotoneFiltration { cell: id });
                }
            }
            min_value = min_value.min(cell.value);
            max_value = max_value.max(cell.value);
        }
        Ok(ValidationReport {
            cells: self.cells.len(),
            counts_by_dim: self.counts_by_dim(),
            min_value,
            max_value,
        })
    }

    /// Cell ids sorted by `(value, dim, id)`.
    pub fn filtration_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.cells.len()).collect();
        order.sort_unstable_by(|&a, &b| self.compare_cells(a, b));
        order
    }

    fn compare_cells(&self, a: usize, b: usize) -> Ordering {
        let (ca, cb) = (&self.cells[a], &self.cells[b]);
        ca.value
            .total_cmp(&cb.value)
            .then(ca.dim.cmp(&cb.dim))
            .then(a.cmp(&b))
    }

    /// Ids of the cells present at parameter `t`.
    pub fn sublevel(&self, t: f64) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&id| self.cells[id].value <= t)
            .collect()
    }

    /// Writes one cell per line as `id dim value b1,b2,...`.
    pub fn write_dump<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for (id, cell) in self.cells.iter().enumerate() {
            write!(w, "{id} {} {}", cell.dim, cell.value)?;
            if !cell.boundary.is_empty() {
                let faces: Vec<String> = cell.boundary.iter().map(|b| b.to_string()).collect();
                write!(w, " {}", faces.join(","))?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    /// Reads the format produced by [`write_dump`](Self::write_dump).
    pub fn read_dump<R: BufRead>(
        reader: R,
        ambient_dim: usize,
        param_kind: ParamKind,
    ) -> Result<Self> {
        let mut complex = FilteredComplex::new(ambient_dim, param_kind);
        for (lineno, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::io("<dump>", e))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::InvalidArgument(format!("malformed dump line {}", lineno + 1));
            let mut tokens = line.split_whitespace();
            let id: usize = tokens.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            let dim: usize = tokens.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            let value: f64 = tokens.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            let boundary = match tokens.next() {
                Some(list) => list
                    .split(',')
                    .map(|s| s.parse().map_err(|_| bad()))
                    .collect::<Result<Vec<usize>>>()?,
                None => Vec::new(),
            };
            if id != complex.len() {
                return Err(bad());
            }
            complex.push(dim, boundary, value);
        }
        Ok(complex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_graph() -> FilteredComplex {
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
    fn single_vertex_is_valid() {
        let mut c = FilteredComplex::new(2, ParamKind::Level);
        c.push(0, vec![], 0.0);
        let report = c.validate().unwrap();
        assert_eq!(report.counts_by_dim, vec![1]);
    }

    #[test]
    fn edge_before_its_endpoint_is_rejected() {
        let mut c = FilteredComplex::new(2, ParamKind::Level);
        c.push(0, vec![], 1.0);
        c.push(0, vec![], 0.0);
        c.push(1, vec![0, 1], 0.0);
        assert!(matches!(
            c.validate(),
            Err(Error::NonMonotoneFiltration { cell: 2 })
        ));
    }

    #[test]
    fn dangling_and_wrong_dimension_faces() {
        let mut c = FilteredComplex::new(2, ParamKind::Level);
        c.push(0, vec![], 0.0);
        c.push(1, vec![0, 7], 0.0);
        assert!(matches!(
            c.validate(),
            Err(Error::DanglingBoundary { cell: 1 })
        ));

        let mut c = triangle_graph();
        c.push(2, vec![0, 3, 4], 2.0);
        assert!(matches!(
            c.validate(),
            Err(Error::DanglingBoundary { cell: 6 })
        ));
    }

    #[test]
    fn nan_value_is_not_monotone() {
        let mut c = FilteredComplex::new(2, ParamKind::Level);
        c.push(0, vec![], f64::NAN);
        assert!(matches!(
            c.validate(),
            Err(Error::NonMonotoneFiltration { cell: 0 })
        ));
    }

    #[test]
    fn order_breaks_ties_by_dim_then_id() {
        let mut c = FilteredComplex::new(1, ParamKind::Level);
        c.push(1, vec![1, 2], 0.0);
        c.push(0, vec![], 0.0);
        c.push(0, vec![], 0.0);
        assert_eq!(c.filtration_order(), vec![1, 2, 0]);
    }

    #[test]
    fn dump_round_trip() {
        let c = triangle_graph();
        let mut buf = Vec::new();
        c.write_dump(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().nth(3), Some("3 1 1 0,1"));
        assert_eq!(text.lines().next(), Some("0 0 0"));
        let back =
            FilteredComplex::read_dump(buf.as_slice(), 2, ParamKind::SiteProbability).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn model_names_parse() {
        for m in Model::ALL {
            assert_eq!(m.as_str().parse::<Model>().unwrap(), m);
        }
        assert!("torus".parse::<Model>().is_err());
    }
}

//! Homological percolation and Euler characteristic experiments on the flat
//! torus: random filtrations, persistence over GF(2), expected EC curves and a
//! Monte Carlo harness.

// `!(x > 0.0)` is used on purpose to reject NaN; dense linear algebra reads
// better with index loops.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod analysis;
pub mod combinatorics;
pub mod complex;
pub mod continuum;
pub mod curves;
pub mod error;
pub mod harness;
pub mod model;
pub mod persistence;
pub mod rng;
pub mod simplicial;
pub mod site;

pub use complex::{Cell, FilteredComplex, Model, ModelDescriptor, ParamKind};
pub use curves::StepCurve;
pub use error::{Error, Result};
pub use model::ModelSpec;
pub use persistence::{compute_persistence, Barcode, Interval};

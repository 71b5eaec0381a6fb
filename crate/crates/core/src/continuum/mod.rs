//! Continuum models: the Poisson–Boolean union of balls (through its periodic
//! Čech filtration) and sublevel sets of Gaussian fields.

pub mod boolean;
pub mod formulas;
pub mod grf;
pub mod meb;

pub use boolean::{
    cech_filtration_periodic, periodic_enclosing_radius, sample_poisson_torus, torus_distance,
    TorusPointSet,
};
pub use formulas::{
    expected_ec_boolean, expected_ec_grf, hermite, lambda_from_radius, radius_from_lambda,
    unit_ball_volume,
};
pub use grf::{sample_grf_torus, sublevel_cubical_filtration, GrfField};
pub use meb::{min_enclosing_ball, Ball};

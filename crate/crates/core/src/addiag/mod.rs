//! Almost-diagonal matrices over a net hierarchy: the weights `ω_{ξη}`, the
//! norm `‖A‖_δ`, composition estimates and Neumann inversion.

mod neumann;
mod norm;
mod probe;
mod weights;

pub use neumann::{neumann_invert, neumann_series, NeumannReport, NeumannSeries};
pub use norm::{
    ad_norm, apply, composition_constant, compose, product_weight_check, product_weight_grid, AdNorm, ProductWeightReport,
};
pub use probe::{boundedness_probe, BoundednessReport};
pub use weights::{omega, omega2, omega_matrix, NetGeometry};

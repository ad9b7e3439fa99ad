//! Divisors of theta functions and their intersection numbers.

pub mod complex;
pub mod corner;
pub mod intersect;
pub mod vandermonde;

pub use complex::{validate_balancing, Balancing, Cell, WeightedComplex};
pub use corner::{divisor_from_section, figure_one, figure_three, figure_two, polynomial_divisor};
pub use intersect::{
    intersection_formula_2d, self_intersection_formula, stable_intersection_2d,
    stable_intersection_with, IntersectionPoint, IntersectionReport, PERTURBATION_PRESETS,
};
pub use vandermonde::vandermonde_interpolate;

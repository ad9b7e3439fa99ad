//! Integral lattices, forms on them and the associated integer linear algebra.

pub mod cokernel;
pub mod enumerate;
pub mod normal_form;
pub mod torus;

pub use cokernel::{
    alpha_membership, coker_torsion_representatives, in_image, kernel_saturation, split_kernel,
    AlphaMembership, Cokernel, KernelSplitting,
};
pub use enumerate::Ellipsoid;
pub use normal_form::{column_hnf, smith_normal_form, ColumnHnf, SnfResult};
pub use torus::{inertia, Inertia, PolarizationForm, TorusSpec};

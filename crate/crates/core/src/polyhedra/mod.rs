//! Exact convex polyhedra over the rationals.

pub mod dd;
pub mod lp;
pub mod polyhedron;

pub use dd::VRep;
pub use lp::{maximize, LpResult};
pub use polyhedron::{
    dimension, project_out, remove_redundancy, vertex_enumeration, Constraint, RationalPolyhedron,
};

//! Theta functions of line bundles `L(Q, α)` on real tori.

pub mod basis;
pub mod bundle;
pub mod polytope;
pub mod reduce;
pub mod section;

pub use basis::{fundamental_cell, theta_generator_eval, GeneratorBasis, Piece, VoronoiCell};
pub use bundle::{classify_bundle, translate_bundle, BundleClass, BundleSpec};
pub use polytope::{
    h0, h0_report, section_polyhedron, section_polyhedron_with, H0Report, SectionPolyhedron,
    DEFAULT_H0_POLYHEDRON_CAP,
};
pub use reduce::{reduce_semidefinite, ReducedBundle};
pub use section::ThetaSection;

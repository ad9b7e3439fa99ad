//! The image of `φ` in `T^B` and the dimension count `h⁰`.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::basis::GeneratorBasis;
use super::bundle::{BundleClass, BundleSpec};
use crate::error::{Error, Result};
use crate::lattice::Cokernel;
use crate::num::{ints_to_rats, Int, Rat};
use crate::polyhedra::{Constraint, RationalPolyhedron, VRep};
use crate::serde_rat;

/// Largest `|B|` for which `h0_report` also builds the section polyhedron.
pub const DEFAULT_H0_POLYHEDRON_CAP: usize = 8;

#[derive(Clone, Debug, Serialize)]
pub struct SectionPolyhedron {
    #[serde(with = "serde_rat::intvecvec")]
    pub reps: Vec<Vec<Int>>,
    /// `Im φ` in the coordinates `(t_b)`.
    pub polyhedron: RationalPolyhedron,
    pub slice_coordinate: usize,
    /// `Im φ ∩ {t_{slice} = 0}` in the remaining coordinates.
    pub slice: RationalPolyhedron,
    pub slice_vertices: VRep,
}

impl SectionPolyhedron {
    pub fn dimension(&self) -> i64 {
        self.polyhedron.dimension()
    }

    pub fn contains(&self, t: &[Rat]) -> bool {
        self.polyhedron.contains(t)
    }
}

/// `{(t, x) : x ∈ D_0^{b_i}, t_j + Θ_j(x) <= t_i + Θ_i(x) for all j}`.
fn lifted_cell(basis: &GeneratorBasis, i: usize) -> Result<RationalPolyhedron> {
    let m = basis.len();
    let k = basis.working_dim();
    let b = ints_to_rats(&basis.working_reps()[i]);
    let ri = basis.r_of_b(i);
    let mut p = RationalPolyhedron::universe(m + k);
    for h in &basis.fundamental_cell(i).ineqs {
        let mut a = vec![Rat::zero(); m];
        a.extend(h.a.iter().cloned());
        p.ineqs.push(Constraint::new(a, h.c.clone()));
    }
    for j in (0..m).filter(|&j| j != i) {
        for piece in basis.pieces_on_cell(i, j)? {
            let mut a = vec![Rat::zero(); m];
            a[j] = Rat::from_integer(1.into());
            a[i] = -Rat::from_integer(1.into());
            a.extend(piece.slope.iter().zip(&b).map(|(s, bb)| s - bb));
            p.ineqs.push(Constraint::new(a, -(&piece.constant + ri)));
        }
    }
    Ok(p.remove_redundancy())
}

pub fn section_polyhedron_with(
    basis: &GeneratorBasis,
    slice_coordinate: usize,
) -> Result<SectionPolyhedron> {
    let m = basis.len();
    if slice_coordinate >= m {
        return Err(Error::DimensionMismatch(format!(
            "slice coordinate {slice_coordinate} out of range for {m} generators"
        )));
    }
    let k = basis.working_dim();
    let xs: Vec<usize> = (m..m + k).collect();
    let parts: Vec<RationalPolyhedron> = (0..m)
        .into_par_iter()
        .map(|i| Ok(lifted_cell(basis, i)?.project_out(&xs)))
        .collect::<Result<_>>()?;
    let polyhedron = parts
        .iter()
        .fold(RationalPolyhedron::universe(m), |acc, p| acc.intersect(p))
        .remove_redundancy();
    let slice = polyhedron
        .fix_coordinate(slice_coordinate, &Rat::zero())
        .remove_redundancy();
    let slice_vertices = slice.vertex_enumeration();
    Ok(SectionPolyhedron {
        reps: basis.reps().to_vec(),
        polyhedron,
        slice_coordinate,
        slice,
        slice_vertices,
    })
}

pub fn section_polyhedron(spec: &BundleSpec) -> Result<SectionPolyhedron> {
    section_polyhedron_with(&GeneratorBasis::new(spec)?, 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H0Report {
    pub class: BundleClass,
    pub h0: usize,
    /// `|torsion Cok(q)|`, or zero without sections.
    pub cokernel_formula: usize,
    /// `dim Im φ`, when `|B|` is within the cap.
    pub polyhedron_dimension: Option<i64>,
}

impl H0Report {
    pub fn agrees(&self) -> bool {
        self.polyhedron_dimension
            .is_none_or(|d| d == self.cokernel_formula as i64)
    }
}

/// `h⁰` by the cokernel count.
pub fn h0(spec: &BundleSpec) -> usize {
    if !spec.class().has_sections() {
        return 0;
    }
    Cokernel::new(spec.form(), spec.torus())
        .expect("semidefinite forms split")
        .torsion_order()
}

/// `h⁰` by the cokernel count and, for `|B| <= cap`, by the dimension of the
/// section polyhedron.
pub fn h0_report(spec: &BundleSpec, cap: usize) -> Result<H0Report> {
    let cokernel_formula = h0(spec);
    let polyhedron_dimension = if spec.class().has_sections() && cokernel_formula <= cap {
        Some(section_polyhedron(spec)?.dimension())
    } else {
        None
    };
    Ok(H0Report {
        class: spec.class(),
        h0: cokernel_formula,
        cokernel_formula,
        polyhedron_dimension,
    })
}

//! Corner loci of maxima of affine functions.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::complex::{lattice_weight, Cell, WeightedComplex};
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::num::{dot, sub_vec, Rat};
use crate::polyhedra::{Constraint, RationalPolyhedron, VRep};
use crate::theta::{Piece, ThetaSection};
use crate::tropical::Tropical;

/// `{x : p(x) >= q(x) for q in competitors}`.
fn region(pieces: &[Piece], p: usize, competitors: &[usize], n: usize) -> Result<VRep> {
    let mut poly = RationalPolyhedron::universe(n);
    for &q in competitors.iter().filter(|&&q| q != p) {
        let a = sub_vec(&pieces[q].slope, &pieces[p].slope);
        poly.ineqs.push(Constraint::new(
            a,
            &pieces[p].constant - &pieces[q].constant,
        ));
    }
    let v = poly.vertex_enumeration();
    if !v.lines.is_empty() && !v.vertices.is_empty() {
        return Err(Error::NotApplicable(
            "a linearity region contains a line".into(),
        ));
    }
    Ok(v)
}

fn full_dimensional(v: &VRep, n: usize) -> bool {
    let Some(v0) = v.vertices.first() else {
        return false;
    };
    let mut rows: Vec<Vec<Rat>> = v.vertices[1..].iter().map(|x| sub_vec(x, v0)).collect();
    rows.extend(v.rays.iter().cloned());
    !rows.is_empty() && QMatrix::from_rows(rows).rank() == n
}

/// Codimension-one cells where the max of `pieces` is attained twice,
/// collected from the regions of the pieces in `candidates`. The region of a
/// candidate `p` is cut out by `competitors(p)`, which must contain every
/// piece that is maximal somewhere on it.
fn corner_cells(
    pieces: &[Piece],
    n: usize,
    candidates: &[usize],
    competitors: impl Fn(usize) -> Vec<usize>,
) -> Result<Vec<Cell>> {
    if n == 0 || n > 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    let mut faces: BTreeMap<(Vec<Vec<Rat>>, Vec<Vec<Rat>>), i64> = BTreeMap::new();
    for &p in candidates {
        let comps = competitors(p);
        let v = region(pieces, p, &comps, n)?;
        if !full_dimensional(&v, n) {
            continue;
        }
        for &q in comps.iter().filter(|&&q| q != p) {
            let diff = sub_vec(&pieces[q].slope, &pieces[p].slope);
            let ties: Vec<Vec<Rat>> = v
                .vertices
                .iter()
                .filter(|x| pieces[p].eval(x) == pieces[q].eval(x))
                .cloned()
                .collect();
            let along: Vec<Vec<Rat>> = v
                .rays
                .iter()
                .filter(|r| dot(&diff, r).is_zero())
                .cloned()
                .collect();
            let face = match (n, ties.len(), along.len()) {
                (1, 1, _) => (ties, Vec::new()),
                (2, t, 0) if t >= 2 => (ties, Vec::new()),
                (2, 1, r) if r >= 1 => (ties, along),
                _ => continue,
            };
            let w = lattice_weight(&diff);
            let entry = faces.entry(face).or_insert(0);
            *entry = (*entry).max(w);
        }
    }
    Ok(faces
        .into_iter()
        .map(|((vertices, rays), weight)| Cell {
            vertices,
            rays,
            weight,
        })
        .collect())
}

/// Keeps the largest constant for each slope.
fn merge_slopes(pieces: Vec<Piece>) -> Vec<Piece> {
    let mut best: BTreeMap<Vec<Rat>, Rat> = BTreeMap::new();
    for p in pieces {
        let e = best.entry(p.slope).or_insert_with(|| p.constant.clone());
        if p.constant > *e {
            *e = p.constant;
        }
    }
    best.into_iter()
        .map(|(slope, constant)| Piece { slope, constant })
        .collect()
}

/// `D(f)` in `R^n` for the tropical polynomial `f = max_i {s_i . x + k_i}`.
pub fn polynomial_divisor(n: usize, terms: &[(Vec<i64>, Rat)]) -> Result<WeightedComplex> {
    if terms.iter().any(|(s, _)| s.len() != n) {
        return Err(Error::DimensionMismatch("term slope length".into()));
    }
    let pieces = merge_slopes(
        terms
            .iter()
            .map(|(s, k)| Piece {
                slope: s.iter().map(|&v| Rat::from_integer(v.into())).collect(),
                constant: k.clone(),
            })
            .collect(),
    );
    let all: Vec<usize> = (0..pieces.len()).collect();
    let cells = corner_cells(&pieces, n, &all, |_| all.clone())?;
    Ok(WeightedComplex::plane(n, cells))
}

/// `max{x, y, 0}`.
pub fn figure_one() -> WeightedComplex {
    let z = Rat::zero;
    polynomial_divisor(
        2,
        &[(vec![1, 0], z()), (vec![0, 1], z()), (vec![0, 0], z())],
    )
    .expect("planar")
}

/// `max{2x, y + 1, x + y - 1, 0}`.
pub fn figure_two() -> WeightedComplex {
    let c = |v: i64| Rat::from_integer(v.into());
    polynomial_divisor(
        2,
        &[
            (vec![2, 0], c(0)),
            (vec![0, 1], c(1)),
            (vec![1, 1], c(-1)),
            (vec![0, 0], c(0)),
        ],
    )
    .expect("planar")
}

/// `max{3x, 3y - 3, 2x + y + 3, x + 3, 0}`.
pub fn figure_three() -> WeightedComplex {
    let c = |v: i64| Rat::from_integer(v.into());
    polynomial_divisor(
        2,
        &[
            (vec![3, 0], c(0)),
            (vec![0, 3], c(-3)),
            (vec![2, 1], c(3)),
            (vec![1, 0], c(3)),
            (vec![0, 0], c(0)),
        ],
    )
    .expect("planar")
}

/// The corner locus of a theta function on the (working) torus, one cell per
/// `Λ`-orbit.
pub fn divisor_from_section(s: &ThetaSection) -> Result<WeightedComplex> {
    if s.is_zero() {
        return Err(Error::NotApplicable(
            "the zero section has no divisor".into(),
        ));
    }
    let basis = s.basis();
    let spec = basis.working_spec();
    let k = spec.dim();
    let l = spec.torus().basis().clone();
    if k == 0 {
        return Ok(WeightedComplex::on_torus(&l, Vec::new()));
    }
    if k > 2 {
        return Err(Error::UnsupportedDimension(k));
    }
    let q = spec.form();
    let half = Rat::new(1.into(), 2.into());
    let centre = l.mul_vec(&vec![half.clone(); k]);
    // squared Q-radius of the fundamental parallelepiped around its centre
    let mut rf2 = Rat::zero();
    for mask in 0..(1u32 << k) {
        let sigma: Vec<Rat> = (0..k)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    half.clone()
                } else {
                    -half.clone()
                }
            })
            .collect();
        let v = l.mul_vec(&sigma);
        rf2 = rf2.max(q.pair(&v, &v));
    }
    let rho2 = &basis.voronoi().rho2;
    let two = Rat::from_integer(2.into());
    let near_bound = &two * (&rf2 + rho2);
    // near pieces are within R + ρ of the centre, their competitors within
    // a further 2ρ
    let comp_bound = Rat::from_integer(4.into()) * &rf2 + Rat::from_integer(12.into()) * rho2;
    let mut pieces = Vec::new();
    let mut near = Vec::new();
    for (j, c) in s.coeffs().iter().enumerate() {
        let Tropical::Finite(c) = c else { continue };
        let close = basis.pieces_within(j, &centre, &near_bound)?;
        for p in basis.pieces_within(j, &centre, &comp_bound)? {
            if close.binary_search(&p).is_ok() {
                near.push(pieces.len());
            }
            pieces.push(Piece {
                constant: &p.constant + c,
                slope: p.slope,
            });
        }
    }
    // a piece maximal at x is the nearest of its coset, within ρ of x, so
    // pieces maximal on a common region have centres within 2ρ
    let qinv = q.matrix().inverse().expect("definite form");
    let centres: Vec<Vec<Rat>> = pieces
        .iter()
        .map(|p| sub_vec(&qinv.mul_vec(&p.slope), basis.r()))
        .collect();
    let reach = Rat::from_integer(4.into()) * rho2;
    let competitors = |p: usize| {
        (0..pieces.len())
            .filter(|&i| {
                let d = sub_vec(&centres[i], &centres[p]);
                q.pair(&d, &d) <= reach
            })
            .collect()
    };
    let cells = corner_cells(&pieces, k, &near, competitors)?;
    Ok(WeightedComplex::on_torus(&l, cells))
}

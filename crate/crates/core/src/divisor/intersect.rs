//! Stable intersection of curves on surfaces and the self-intersection
//! number `D^n = n! det q`.

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::complex::{Cell, WeightedComplex};
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::num::{add_vec, floor, ints_to_rats, primitive_direction, scale_vec, sub_vec, Int, Rat};
use crate::serde_rat;
use crate::theta::BundleSpec;

/// Slopes `ρ` of the perturbation directions `(1, ρ)` tried in order.
pub const PERTURBATION_PRESETS: [(i64, i64); 8] = [
    (3, 7),
    (5, 11),
    (7, 13),
    (11, 17),
    (13, 19),
    (17, 23),
    (-19, 29),
    (-23, 31),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionPoint {
    #[serde(with = "serde_rat::vec")]
    pub point: Vec<Rat>,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    pub points: Vec<IntersectionPoint>,
    pub total: i64,
    /// The direction `v` of the perturbation `ε v` applied to the second curve.
    #[serde(with = "serde_rat::vec")]
    pub perturbation: Vec<Rat>,
}

/// Compares `p0 + p1 ε` with `e` for infinitesimal `ε > 0`; `None` on
/// equality.
fn lex_cmp(p0: &Rat, p1: &Rat, e: &Rat) -> Option<std::cmp::Ordering> {
    match p0.cmp(e) {
        std::cmp::Ordering::Equal if p1.is_zero() => None,
        std::cmp::Ordering::Equal => Some(p1.cmp(&Rat::zero())),
        o => Some(o),
    }
}

fn in_range(p0: &Rat, p1: &Rat, bounded: bool) -> Option<bool> {
    use std::cmp::Ordering::*;
    let lower = lex_cmp(p0, p1, &Rat::zero())? == Greater;
    if !bounded {
        return Some(lower);
    }
    let upper = lex_cmp(p0, p1, &Rat::from_integer(1.into()))? == Less;
    Some(lower && upper)
}

fn det2(a: &[Rat], b: &[Rat]) -> Rat {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn edges(c: &WeightedComplex) -> Result<Vec<(&Cell, Vec<Rat>, Vec<Rat>, bool)>> {
    c.cells
        .iter()
        .map(|cell| {
            let (a, d, bounded) = cell.as_edge().ok_or(Error::NotPureCurve)?;
            Ok((cell, a.to_vec(), d, bounded))
        })
        .collect()
}

/// Integer vectors `z` with `L z` able to move the second edge onto the
/// first, from the ranges of their lattice coordinates.
fn translates(linv: &QMatrix, e1: &[Vec<Rat>], e2: &[Vec<Rat>]) -> Vec<Vec<Int>> {
    let coords =
        |pts: &[Vec<Rat>]| -> Vec<Vec<Rat>> { pts.iter().map(|p| linv.mul_vec(p)).collect() };
    let (c1, c2) = (coords(e1), coords(e2));
    let n = linv.rows();
    let mut ranges = Vec::new();
    for i in 0..n {
        let lo1 = c1.iter().map(|c| &c[i]).min().unwrap();
        let hi1 = c1.iter().map(|c| &c[i]).max().unwrap();
        let lo2 = c2.iter().map(|c| &c[i]).min().unwrap();
        let hi2 = c2.iter().map(|c| &c[i]).max().unwrap();
        let lo: Int = floor(&(lo1 - hi2)) - 1;
        let hi: Int = floor(&(hi1 - lo2)) + 1;
        ranges.push((lo, hi));
    }
    let mut out: Vec<Vec<Int>> = vec![Vec::new()];
    for (lo, hi) in ranges {
        let mut next = Vec::new();
        for z in &out {
            let mut v = lo.clone();
            while v <= hi {
                let mut w = z.clone();
                w.push(v.clone());
                next.push(w);
                v += 1;
            }
        }
        out = next;
    }
    out
}

/// Stable intersection with the second curve moved by `ε (1, ρ)`;
/// `Ok(None)` when this direction is degenerate for the pair.
pub fn stable_intersection_with(
    c1: &WeightedComplex,
    c2: &WeightedComplex,
    rho: &Rat,
) -> Result<Option<IntersectionReport>> {
    if c1.ambient_dim != 2 || c2.ambient_dim != 2 {
        return Err(Error::NotPureCurve);
    }
    if c1.torus != c2.torus || c1.lattice != c2.lattice {
        return Err(Error::AmbientMismatch);
    }
    let v = vec![Rat::from_integer(1.into()), rho.clone()];
    let e1s = edges(c1)?;
    let e2s = edges(c2)?;
    let l = c1.lattice_matrix();
    let linv = l.as_ref().map(|l| l.inverse().expect("lattice basis"));
    let mut points: BTreeMap<Vec<Rat>, i64> = BTreeMap::new();
    for (cell1, a1, d1, b1) in &e1s {
        for (cell2, a2, d2, b2) in &e2s {
            let shifts: Vec<Vec<Rat>> = match (&l, &linv) {
                (Some(l), Some(linv)) => {
                    if !*b1 || !*b2 {
                        return Err(Error::NotPureCurve);
                    }
                    let p1 = [a1.clone(), add_vec(a1, d1)];
                    let p2 = [a2.clone(), add_vec(a2, d2)];
                    translates(linv, &p1, &p2)
                        .iter()
                        .map(|z| l.mul_vec(&ints_to_rats(z)))
                        .collect()
                }
                _ => vec![vec![Rat::zero(), Rat::zero()]],
            };
            let det = det2(d1, d2);
            for shift in shifts {
                let a2s = add_vec(a2, &shift);
                let w0 = sub_vec(&a2s, a1);
                if det.is_zero() {
                    // parallel: disjoint after the shift unless collinear
                    // and the shift runs along them
                    if det2(&w0, d1).is_zero() && det2(&v, d1).is_zero() {
                        return Ok(None);
                    }
                    continue;
                }
                // a1 + s d1 = a2 + shift + ε v + t d2
                let solve = |w: &[Rat]| (det2(w, d2) / &det, det2(w, d1) / &det);
                let (s0, t0) = solve(&w0);
                let (s1, t1) = solve(&v);
                let (Some(in1), Some(in2)) = (in_range(&s0, &s1, *b1), in_range(&t0, &t1, *b2))
                else {
                    return Ok(None);
                };
                if !(in1 && in2) {
                    continue;
                }
                let u1 = primitive_direction(d1).expect("nonzero edge");
                let u2 = primitive_direction(d2).expect("nonzero edge");
                let m = (&u1[0] * &u2[1] - &u1[1] * &u2[0]).abs();
                let mult = m.to_i64().expect("small multiplicity") * cell1.weight * cell2.weight;
                let p = add_vec(a1, &scale_vec(&s0, d1));
                let key = c1.canonical_point(&p);
                *points.entry(key).or_insert(0) += mult;
            }
        }
    }
    let points: Vec<IntersectionPoint> = points
        .into_iter()
        .map(|(point, multiplicity)| IntersectionPoint {
            point,
            multiplicity,
        })
        .collect();
    let total = points.iter().map(|p| p.multiplicity).sum();
    Ok(Some(IntersectionReport {
        points,
        total,
        perturbation: v,
    }))
}

/// Stable intersection of two curves on the same surface, using the first
/// preset perturbation that is generic for the pair.
pub fn stable_intersection_2d(
    c1: &WeightedComplex,
    c2: &WeightedComplex,
) -> Result<IntersectionReport> {
    for (p, q) in PERTURBATION_PRESETS {
        if let Some(r) = stable_intersection_with(c1, c2, &Rat::new(p.into(), q.into()))? {
            return Ok(r);
        }
    }
    Err(Error::DegeneratePerturbation)
}

/// `D^n = n! det q`, with `det q` taken for `q: Λ -> (Z^n)*` in a
/// positively oriented basis of `Λ`.
pub fn self_intersection_formula(spec: &BundleSpec) -> Rat {
    let n = spec.dim();
    let fact: Int = (1..=n).map(Int::from).product();
    spec.form().det_q(spec.torus()) * Rat::from_integer(fact)
}

/// `D_1 . D_2 = det(q_1 + q_2) - det q_1 - det q_2` on a surface, the
/// polarization of `D^2 = 2 det q`.
pub fn intersection_formula_2d(s1: &BundleSpec, s2: &BundleSpec) -> Result<Rat> {
    if s1.dim() != 2 || s2.dim() != 2 {
        return Err(Error::UnsupportedDimension(s1.dim().max(s2.dim())));
    }
    if s1.torus() != s2.torus() {
        return Err(Error::AmbientMismatch);
    }
    // in a positively oriented basis of Λ
    let (q1, q2) = (s1.form().matrix(), s2.form().matrix());
    let mixed = q1.add(q2).det() - q1.det() - q2.det();
    Ok(mixed * s1.torus().basis().det().abs())
}

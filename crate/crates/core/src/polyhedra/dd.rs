//! Double description: inequalities to generators.
//!
//! The polyhedron is homogenized to the cone `{(x, t) : c t - A x >= 0,
//! t >= 0}` and the cone's generators are built one constraint at a time.
//! Work happens over the integers, with rays kept primitive.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::polyhedron::RationalPolyhedron;
use crate::num::{gcd_all, lcm_denominators, rat_from_int, Int, Rat};
use crate::serde_rat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VRep {
    #[serde(with = "serde_rat::vecvec")]
    pub vertices: Vec<Vec<Rat>>,
    #[serde(with = "serde_rat::vecvec")]
    pub rays: Vec<Vec<Rat>>,
    #[serde(
        with = "serde_rat::vecvec",
        default,
        skip_serializing_if = "Vec::is_empty"
    )]
    pub lines: Vec<Vec<Rat>>,
}

impl VRep {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_polytope(&self) -> bool {
        self.rays.is_empty() && self.lines.is_empty()
    }
}

fn primitive(v: Vec<Int>) -> Vec<Int> {
    let g = gcd_all(&v);
    if g.is_zero() || g == Int::from(1) {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

fn idot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Clone)]
struct Ray {
    v: Vec<Int>,
    zeros: Vec<u64>,
}

fn set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

/// Integer rows `h` with the cone being `{y : h . y >= 0}`.
fn homogenize(p: &RationalPolyhedron) -> Vec<Vec<Int>> {
    let n = p.ambient_dim;
    let mut rows = Vec::new();
    let mut t = vec![Int::zero(); n + 1];
    t[n] = Int::from(1);
    rows.push(t);
    let mut push = |a: &[Rat], c: &Rat, sign: i64| {
        let mut r: Vec<Rat> = a
            .iter()
            .map(|x| -x * Rat::from_integer(sign.into()))
            .collect();
        r.push(c * Rat::from_integer(sign.into()));
        let l = rat_from_int(&lcm_denominators(&r));
        rows.push(primitive(r.iter().map(|x| (x * &l).to_integer()).collect()));
    };
    for h in &p.ineqs {
        push(&h.a, &h.c, 1);
    }
    for h in &p.eqs {
        push(&h.a, &h.c, 1);
        push(&h.a, &h.c, -1);
    }
    rows
}

pub fn double_description(p: &RationalPolyhedron) -> VRep {
    let n = p.ambient_dim;
    let d = n + 1;
    let rows = homogenize(p);
    let words = rows.len().div_ceil(64).max(1);
    let mut lineality: Vec<Vec<Int>> = (0..d)
        .map(|i| (0..d).map(|j| Int::from((i == j) as i64)).collect())
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, h) in rows.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| !idot(h, l).is_zero()) {
            let mut l = lineality.remove(pos);
            if idot(h, &l).is_negative() {
                l = l.into_iter().map(|x| -x).collect();
            }
            let hl = idot(h, &l);
            let project = |v: &[Int]| -> Vec<Int> {
                let hv = idot(h, v);
                primitive(v.iter().zip(&l).map(|(x, y)| x * &hl - y * &hv).collect())
            };
            lineality = lineality.iter().map(|v| project(v)).collect();
            for r in rays.iter_mut() {
                r.v = project(&r.v);
                set(&mut r.zeros, k);
            }
            let mut zeros = vec![0u64; words];
            for j in 0..k {
                set(&mut zeros, j);
            }
            // the new ray is strictly positive on h, zero on earlier rows
            rays.push(Ray { v: l, zeros });
            continue;
        }
        let vals: Vec<Int> = rays.iter().map(|r| idot(h, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (r, v) in rays.iter().zip(&vals) {
            if !v.is_negative() {
                let mut r = r.clone();
                if v.is_zero() {
                    set(&mut r.zeros, k);
                }
                next.push(r);
            }
        }
        let positive: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let negative: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        for &i in &positive {
            for &j in &negative {
                let common = and(&rays[i].zeros, &rays[j].zeros);
                let adjacent =
                    (0..rays.len()).all(|m| m == i || m == j || !subset(&common, &rays[m].zeros));
                if !adjacent {
                    continue;
                }
                let (vi, vj) = (&vals[i], -&vals[j]);
                let v = primitive(
                    rays[i]
                        .v
                        .iter()
                        .zip(&rays[j].v)
                        .map(|(a, b)| a * &vj + b * vi)
                        .collect(),
                );
                let mut zeros = common;
                set(&mut zeros, k);
                next.push(Ray { v, zeros });
            }
        }
        rays = next;
    }

    let mut vertices = Vec::new();
    let mut out_rays = Vec::new();
    for r in &rays {
        let t = &r.v[n];
        if t.is_positive() {
            let tr = rat_from_int(t);
            vertices.push(
                r.v[..n]
                    .iter()
                    .map(|x| rat_from_int(x) / &tr)
                    .collect::<Vec<Rat>>(),
            );
        } else {
            out_rays.push(r.v[..n].iter().map(rat_from_int).collect::<Vec<Rat>>());
        }
    }
    if vertices.is_empty() {
        return VRep {
            vertices: Vec::new(),
            rays: Vec::new(),
            lines: Vec::new(),
        };
    }
    let lines: Vec<Vec<Rat>> = lineality
        .iter()
        .map(|l| l[..n].iter().map(rat_from_int).collect())
        .collect();
    vertices.sort();
    vertices.dedup();
    out_rays.sort();
    out_rays.dedup();
    VRep {
        vertices,
        rays: out_rays,
        lines,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{frac, rat};
    use crate::polyhedra::Constraint;

    #[test]
    fn half_line() {
        let p = RationalPolyhedron::from_ineqs(1, vec![Constraint::new(vec![rat(-1)], rat(0))]);
        let v = double_description(&p);
        assert_eq!(v.vertices, vec![vec![rat(0)]]);
        assert_eq!(v.rays, vec![vec![rat(1)]]);
    }

    #[test]
    fn cube_has_eight_vertices() {
        let p = RationalPolyhedron::cube(&[rat(0), rat(0), rat(0)], &[rat(1), rat(1), rat(1)]);
        let v = double_description(&p);
        assert_eq!(v.vertices.len(), 8);
        assert!(v.is_polytope());
    }

    #[test]
    fn triangle_slice() {
        let third = frac(1, 3);
        let p = RationalPolyhedron::from_ineqs(
            2,
            vec![
                Constraint::new(vec![rat(-2), rat(1)], third.clone()),
                Constraint::new(vec![rat(1), rat(-2)], third.clone()),
                Constraint::new(vec![rat(1), rat(1)], third.clone()),
            ],
        );
        let v = double_description(&p);
        assert_eq!(
            v.vertices,
            vec![
                vec![-third.clone(), -third.clone()],
                vec![rat(0), third.clone()],
                vec![third.clone(), rat(0)],
            ]
        );
    }

    #[test]
    fn empty_and_line() {
        let p = RationalPolyhedron::from_ineqs(
            1,
            vec![
                Constraint::new(vec![rat(1)], rat(0)),
                Constraint::new(vec![rat(-1)], rat(-1)),
            ],
        );
        assert!(double_description(&p).is_empty());
        let strip = RationalPolyhedron::from_ineqs(
            2,
            vec![
                Constraint::new(vec![rat(1), rat(0)], rat(1)),
                Constraint::new(vec![rat(-1), rat(0)], rat(0)),
            ],
        );
        let v = double_description(&strip);
        assert_eq!(v.vertices.len(), 2);
        assert_eq!(v.lines.len(), 1);
    }
}

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::dd::{double_description, VRep};
use super::lp::{maximize, LpResult};
use crate::matrix::QMatrix;
use crate::num::{dot, gcd_all, lcm_denominators, rat_from_int, Rat};
use crate::serde_rat;

/// `a . x <= c` as an inequality, or `a . x = c` as an equation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Constraint {
    #[serde(with = "serde_rat::vec")]
    pub a: Vec<Rat>,
    #[serde(with = "serde_rat::scalar")]
    pub c: Rat,
}

impl Constraint {
    pub fn new(a: Vec<Rat>, c: Rat) -> Self {
        Constraint { a, c }
    }

    pub fn is_trivial(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        dot(&self.a, x)
    }

    /// Positive rescaling so that `a` is a primitive integer vector.
    pub fn normalized(&self) -> Constraint {
        if self.is_trivial() {
            let c = if self.c.is_negative() {
                -Rat::from_integer(1.into())
            } else {
                Rat::zero()
            };
            return Constraint::new(self.a.clone(), c);
        }
        let l = rat_from_int(&lcm_denominators(&self.a));
        let ints: Vec<_> = self.a.iter().map(|x| (x * &l).to_integer()).collect();
        let g = rat_from_int(&gcd_all(&ints));
        let s = l / g;
        Constraint::new(self.a.iter().map(|x| x * &s).collect(), &self.c * &s)
    }

    /// Normalized with the first nonzero entry positive; for equations.
    fn normalized_eq(&self) -> Constraint {
        let n = self.normalized();
        match n.a.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => Constraint::new(n.a.iter().map(|v| -v).collect(), -n.c),
            _ => n,
        }
    }

    fn as_ref(&self) -> (&[Rat], &Rat) {
        (&self.a, &self.c)
    }
}

/// A convex polyhedron `{x : A x <= c, E x = e}` in `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalPolyhedron {
    pub ambient_dim: usize,
    pub ineqs: Vec<Constraint>,
    #[serde(default)]
    pub eqs: Vec<Constraint>,
}

impl RationalPolyhedron {
    pub fn universe(n: usize) -> Self {
        RationalPolyhedron {
            ambient_dim: n,
            ineqs: Vec::new(),
            eqs: Vec::new(),
        }
    }

    /// The canonical empty polyhedron `0 <= -1`.
    pub fn empty(n: usize) -> Self {
        RationalPolyhedron {
            ambient_dim: n,
            ineqs: vec![Constraint::new(
                vec![Rat::zero(); n],
                -Rat::from_integer(1.into()),
            )],
            eqs: Vec::new(),
        }
    }

    pub fn from_ineqs(n: usize, ineqs: Vec<Constraint>) -> Self {
        RationalPolyhedron {
            ambient_dim: n,
            ineqs,
            eqs: Vec::new(),
        }
    }

    /// The box `prod [lo_i, hi_i]`.
    pub fn cube(lo: &[Rat], hi: &[Rat]) -> Self {
        let n = lo.len();
        let mut p = RationalPolyhedron::universe(n);
        for i in 0..n {
            let mut e = vec![Rat::zero(); n];
            e[i] = Rat::from_integer(1.into());
            p.add_ineq(e.clone(), hi[i].clone());
            p.add_ineq(e.iter().map(|v| -v).collect(), -lo[i].clone());
        }
        p
    }

    pub fn add_ineq(&mut self, a: Vec<Rat>, c: Rat) {
        debug_assert_eq!(a.len(), self.ambient_dim);
        self.ineqs.push(Constraint::new(a, c));
    }

    pub fn add_eq(&mut self, a: Vec<Rat>, c: Rat) {
        debug_assert_eq!(a.len(), self.ambient_dim);
        self.eqs.push(Constraint::new(a, c));
    }

    pub fn intersect(&self, other: &RationalPolyhedron) -> RationalPolyhedron {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut p = self.clone();
        p.ineqs.extend(other.ineqs.iter().cloned());
        p.eqs.extend(other.eqs.iter().cloned());
        p
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.ineqs.iter().all(|h| h.eval(x) <= h.c) && self.eqs.iter().all(|h| h.eval(x) == h.c)
    }

    fn refs(&self, skip: Option<usize>) -> (Vec<(&[Rat], &Rat)>, Vec<(&[Rat], &Rat)>) {
        let ineqs = self
            .ineqs
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != skip)
            .map(|(_, h)| h.as_ref())
            .collect();
        let eqs = self.eqs.iter().map(Constraint::as_ref).collect();
        (ineqs, eqs)
    }

    pub fn maximize(&self, obj: &[Rat]) -> LpResult {
        let (i, e) = self.refs(None);
        maximize(self.ambient_dim, obj, &i, &e)
    }

    pub fn minimize(&self, obj: &[Rat]) -> LpResult {
        let neg: Vec<Rat> = obj.iter().map(|v| -v).collect();
        match self.maximize(&neg) {
            LpResult::Optimal { value, point } => LpResult::Optimal {
                value: -value,
                point,
            },
            other => other,
        }
    }

    pub fn feasible_point(&self) -> Option<Vec<Rat>> {
        match self.maximize(&vec![Rat::zero(); self.ambient_dim]) {
            LpResult::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.feasible_point().is_none()
    }

    /// Indices of inequalities that hold with equality on all of `P`.
    /// Assumes `P` is nonempty.
    pub fn implicit_equalities(&self) -> Vec<usize> {
        (0..self.ineqs.len())
            .filter(|&i| {
                let h = &self.ineqs[i];
                match self.minimize(&h.a) {
                    LpResult::Optimal { value, .. } => value == h.c,
                    _ => false,
                }
            })
            .collect()
    }

    /// Affine dimension, `-1` for the empty set.
    pub fn dimension(&self) -> i64 {
        if self.is_empty() {
            return -1;
        }
        let mut rows: Vec<Vec<Rat>> = self.eqs.iter().map(|h| h.a.clone()).collect();
        for i in self.implicit_equalities() {
            rows.push(self.ineqs[i].a.clone());
        }
        let rank = if rows.is_empty() {
            0
        } else {
            QMatrix::from_rows(rows).rank()
        };
        (self.ambient_dim - rank) as i64
    }

    /// An equivalent irredundant description: independent equations
    /// (including the implicit ones) plus facet-defining inequalities, each
    /// scaled to primitive integer normals.
    pub fn remove_redundancy(&self) -> RationalPolyhedron {
        let n = self.ambient_dim;
        if self.is_empty() {
            return RationalPolyhedron::empty(n);
        }
        let implicit = self.implicit_equalities();
        let mut eq_rows: Vec<Vec<Rat>> = self
            .eqs
            .iter()
            .chain(implicit.iter().map(|&i| &self.ineqs[i]))
            .map(|h| {
                let mut row = h.a.clone();
                row.push(h.c.clone());
                row
            })
            .collect();
        let mut eqs = Vec::new();
        if !eq_rows.is_empty() {
            let (r, pivots) = QMatrix::from_rows(std::mem::take(&mut eq_rows)).rref();
            for (k, _) in pivots.iter().enumerate() {
                let row = r.row(k);
                eqs.push(Constraint::new(row[..n].to_vec(), row[n].clone()).normalized_eq());
            }
        }
        let mut kept: Vec<Constraint> = self
            .ineqs
            .iter()
            .enumerate()
            .filter(|(i, h)| !implicit.contains(i) && !h.is_trivial())
            .map(|(_, h)| h.normalized())
            .collect();
        kept.sort();
        kept.dedup();
        let mut cur = RationalPolyhedron {
            ambient_dim: n,
            ineqs: kept,
            eqs,
        };
        let mut i = 0;
        while i < cur.ineqs.len() {
            let (rest, e) = cur.refs(Some(i));
            let h = &cur.ineqs[i];
            let redundant = match maximize(n, &h.a, &rest, &e) {
                LpResult::Optimal { value, .. } => value <= h.c,
                LpResult::Infeasible => true,
                LpResult::Unbounded => false,
            };
            if redundant {
                cur.ineqs.remove(i);
            } else {
                i += 1;
            }
        }
        cur
    }

    /// `other` is a subset of `self`.
    pub fn contains_polyhedron(&self, other: &RationalPolyhedron) -> bool {
        if other.is_empty() {
            return true;
        }
        let ineq_ok = self.ineqs.iter().all(|h| match other.maximize(&h.a) {
            LpResult::Optimal { value, .. } => value <= h.c,
            _ => false,
        });
        ineq_ok
            && self.eqs.iter().all(|h| {
                matches!(other.maximize(&h.a), LpResult::Optimal { ref value, .. } if *value == h.c)
                    && matches!(other.minimize(&h.a), LpResult::Optimal { ref value, .. } if *value == h.c)
            })
    }

    pub fn set_equal(&self, other: &RationalPolyhedron) -> bool {
        self.contains_polyhedron(other) && other.contains_polyhedron(self)
    }

    /// Image under `x -> x + v`.
    pub fn translate(&self, v: &[Rat]) -> RationalPolyhedron {
        let shift = |h: &Constraint| Constraint::new(h.a.clone(), &h.c + dot(&h.a, v));
        RationalPolyhedron {
            ambient_dim: self.ambient_dim,
            ineqs: self.ineqs.iter().map(shift).collect(),
            eqs: self.eqs.iter().map(shift).collect(),
        }
    }

    /// The slice obtained by fixing `x_coord = value`, in the remaining
    /// coordinates.
    pub fn fix_coordinate(&self, coord: usize, value: &Rat) -> RationalPolyhedron {
        let cut = |h: &Constraint| {
            let mut a = h.a.clone();
            let k = a.remove(coord);
            Constraint::new(a, &h.c - k * value)
        };
        RationalPolyhedron {
            ambient_dim: self.ambient_dim - 1,
            ineqs: self.ineqs.iter().map(cut).collect(),
            eqs: self.eqs.iter().map(cut).collect(),
        }
    }

    /// Coordinate projection forgetting `coords`, by Fourier-Motzkin
    /// elimination with Chernikov pruning and a final LP redundancy pass.
    pub fn project_out(&self, coords: &[usize]) -> RationalPolyhedron {
        let n = self.ambient_dim;
        if self.is_empty() {
            return RationalPolyhedron::empty(n - coords.len());
        }
        let mut eqs: Vec<Constraint> = self.eqs.clone();
        let mut ineqs: Vec<(Constraint, Vec<usize>)> = self
            .ineqs
            .iter()
            .enumerate()
            .map(|(i, h)| (h.clone(), vec![i]))
            .collect();
        let mut fm_steps = 0usize;
        for &j in coords {
            if let Some(pos) = eqs.iter().position(|h| !h.a[j].is_zero()) {
                let pivot = eqs.remove(pos);
                let substitute = |h: &Constraint| {
                    let f = &h.a[j] / &pivot.a[j];
                    Constraint::new(
                        h.a.iter().zip(&pivot.a).map(|(x, p)| x - &f * p).collect(),
                        &h.c - &f * &pivot.c,
                    )
                };
                eqs = eqs.iter().map(substitute).collect();
                ineqs = ineqs
                    .iter()
                    .map(|(h, s)| (substitute(h), s.clone()))
                    .collect();
                continue;
            }
            fm_steps += 1;
            let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
            for item in ineqs {
                if item.0.a[j].is_positive() {
                    pos.push(item);
                } else if item.0.a[j].is_negative() {
                    neg.push(item);
                } else {
                    zero.push(item);
                }
            }
            let mut next = zero;
            for (p, ps) in &pos {
                for (q, qs) in &neg {
                    let mut hist: Vec<usize> = ps.iter().chain(qs).copied().collect();
                    hist.sort_unstable();
                    hist.dedup();
                    if hist.len() > fm_steps + 1 {
                        continue;
                    }
                    let (ap, aq) = (&p.a[j], -&q.a[j]);
                    let a: Vec<Rat> =
                        p.a.iter()
                            .zip(&q.a)
                            .map(|(x, y)| x * &aq + y * ap)
                            .collect();
                    let c = &p.c * &aq + &q.c * ap;
                    next.push((Constraint::new(a, c).normalized(), hist));
                }
            }
            next.sort_by(|x, y| x.0.cmp(&y.0));
            next.dedup_by(|x, y| x.0 == y.0);
            if next.len() > INTERMEDIATE_PRUNE {
                next = prune_redundant(n, next, &eqs);
            }
            ineqs = next;
        }
        let keep: Vec<usize> = (0..n).filter(|i| !coords.contains(i)).collect();
        let drop = |h: &Constraint| {
            Constraint::new(keep.iter().map(|&i| h.a[i].clone()).collect(), h.c.clone())
        };
        RationalPolyhedron {
            ambient_dim: keep.len(),
            ineqs: ineqs.iter().map(|(h, _)| drop(h)).collect(),
            eqs: eqs.iter().map(drop).collect(),
        }
        .remove_redundancy()
    }

    pub fn vertex_enumeration(&self) -> VRep {
        double_description(self)
    }
}

/// Above this many intermediate inequalities, Fourier-Motzkin steps are
/// followed by an LP redundancy pass.
const INTERMEDIATE_PRUNE: usize = 48;

fn prune_redundant(
    n: usize,
    mut rows: Vec<(Constraint, Vec<usize>)>,
    eqs: &[Constraint],
) -> Vec<(Constraint, Vec<usize>)> {
    let e: Vec<(&[Rat], &Rat)> = eqs.iter().map(Constraint::as_ref).collect();
    let mut i = 0;
    while i < rows.len() {
        let rest: Vec<(&[Rat], &Rat)> = rows
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, (h, _))| h.as_ref())
            .collect();
        let h = &rows[i].0;
        let redundant = match maximize(n, &h.a, &rest, &e) {
            LpResult::Optimal { value, .. } => value <= h.c,
            _ => false,
        };
        if redundant {
            rows.remove(i);
        } else {
            i += 1;
        }
    }
    rows
}

pub fn project_out(p: &RationalPolyhedron, coords: &[usize]) -> RationalPolyhedron {
    p.project_out(coords)
}

pub fn vertex_enumeration(p: &RationalPolyhedron) -> VRep {
    p.vertex_enumeration()
}

pub fn dimension(p: &RationalPolyhedron) -> i64 {
    p.dimension()
}

pub fn remove_redundancy(p: &RationalPolyhedron) -> RationalPolyhedron {
    p.remove_redundancy()
}

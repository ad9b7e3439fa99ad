//! Exact enumeration of integer points in an ellipsoid.
//!
//! For a positive definite Gram matrix `G` we factor `G = R^T D R` with `R`
//! unit upper triangular, then walk coordinates from last to first, bounding
//! each one by the remaining budget (Fincke-Pohst).

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::num::{ceil, floor, rat_from_int, sqrt_upper, Int, Rat};

/// Default cap on visited enumeration nodes.
pub const DEFAULT_NODE_CAP: usize = 2_000_000;

#[derive(Clone, Debug)]
pub struct Ellipsoid {
    gram: QMatrix,
    /// `l[(i, j)]` for `i > j`: the multiplier of `y_i` in the `j`-th square.
    l: QMatrix,
    d: Vec<Rat>,
    cap: usize,
}

impl Ellipsoid {
    pub fn new(gram: &QMatrix) -> Result<Self> {
        Self::with_cap(gram, DEFAULT_NODE_CAP)
    }

    pub fn with_cap(gram: &QMatrix, cap: usize) -> Result<Self> {
        let n = gram.rows();
        let mut l = QMatrix::identity(n);
        let mut d = vec![Rat::zero(); n];
        for j in 0..n {
            let mut dj = gram[(j, j)].clone();
            for k in 0..j {
                dj -= &l[(j, k)] * &l[(j, k)] * &d[k];
            }
            if !dj.is_positive() {
                return Err(Error::NotPositiveDefinite);
            }
            for i in j + 1..n {
                let mut v = gram[(i, j)].clone();
                for k in 0..j {
                    v -= &l[(i, k)] * &l[(j, k)] * &d[k];
                }
                l[(i, j)] = v / &dj;
            }
            d[j] = dj;
        }
        Ok(Ellipsoid {
            gram: gram.clone(),
            l,
            d,
            cap,
        })
    }

    pub fn dim(&self) -> usize {
        self.d.len()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// `y^T G y`.
    pub fn norm(&self, y: &[Rat]) -> Rat {
        crate::num::dot(y, &self.gram.mul_vec(y))
    }

    /// All `z` in `Z^n` with `(z - c)^T G (z - c) <= bound`, with their values.
    pub fn points_within(&self, center: &[Rat], bound: &Rat) -> Result<Vec<(Vec<Int>, Rat)>> {
        let n = self.dim();
        let mut out = Vec::new();
        if bound.is_negative() {
            return Ok(out);
        }
        let mut z = vec![Int::zero(); n];
        let mut y = vec![Rat::zero(); n];
        let mut nodes = 0usize;
        self.descend(
            n,
            center,
            bound,
            &Rat::zero(),
            &mut z,
            &mut y,
            &mut nodes,
            &mut out,
        )?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        &self,
        level: usize,
        center: &[Rat],
        bound: &Rat,
        partial: &Rat,
        z: &mut Vec<Int>,
        y: &mut Vec<Rat>,
        nodes: &mut usize,
        out: &mut Vec<(Vec<Int>, Rat)>,
    ) -> Result<()> {
        if level == 0 {
            out.push((z.clone(), partial.clone()));
            return Ok(());
        }
        let j = level - 1;
        // y_j + sum_{i>j} l_ij y_i, with y = z - c
        let mut shift = Rat::zero();
        for i in j + 1..self.dim() {
            shift += &self.l[(i, j)] * &y[i];
        }
        let mid = &center[j] - &shift;
        let budget = (bound - partial) / &self.d[j];
        let radius = rat_from_int(&sqrt_upper(&budget));
        let mut zj = ceil(&(&mid - &radius));
        let hi = floor(&(&mid + &radius));
        while zj <= hi {
            *nodes += 1;
            if *nodes > self.cap {
                return Err(Error::TruncationNotCertified { cap: self.cap });
            }
            let yj = rat_from_int(&zj) - &center[j];
            let t = &yj + &shift;
            let val = partial + &self.d[j] * &t * &t;
            if &val <= bound {
                z[j] = zj.clone();
                y[j] = yj;
                self.descend(j, center, bound, &val, z, y, nodes, out)?;
            }
            zj += 1;
        }
        Ok(())
    }

    /// Minimum of `(z - c)^T G (z - c)` over `Z^n` and every minimizer.
    pub fn closest(&self, center: &[Rat]) -> Result<(Rat, Vec<Vec<Int>>)> {
        let rounded: Vec<Rat> = center
            .iter()
            .map(|c| rat_from_int(&c.round().to_integer()))
            .collect();
        let diff: Vec<Rat> = rounded.iter().zip(center).map(|(a, b)| a - b).collect();
        let bound = self.norm(&diff);
        let pts = self.points_within(center, &bound)?;
        let best = pts
            .iter()
            .map(|(_, v)| v.clone())
            .min()
            .expect("the rounded point is always found");
        let mut arg: Vec<Vec<Int>> = pts
            .into_iter()
            .filter(|(_, v)| *v == best)
            .map(|(z, _)| z)
            .collect();
        arg.sort();
        Ok((best, arg))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::num::{frac, int, rat};
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> QMatrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn counts_in_unit_disc() {
        let e = Ellipsoid::new(&q(&[&[1, 0], &[0, 1]])).unwrap();
        let pts = e.points_within(&[rat(0), rat(0)], &rat(1)).unwrap();
        assert_eq!(pts.len(), 5);
        let pts = e.points_within(&[rat(0), rat(0)], &rat(2)).unwrap();
        assert_eq!(pts.len(), 9);
    }

    #[test]
    fn closest_keeps_ties() {
        let e = Ellipsoid::new(&q(&[&[1, 0], &[0, 1]])).unwrap();
        let (v, arg) = e.closest(&[frac(1, 2), frac(1, 2)]).unwrap();
        assert_eq!(v, frac(1, 2));
        assert_eq!(arg.len(), 4);
        assert_eq!(arg[0], vec![int(0), int(0)]);
    }

    #[test]
    fn rejects_indefinite() {
        assert!(Ellipsoid::new(&q(&[&[1, 2], &[2, 1]])).is_err());
    }

    #[test]
    fn cap_is_reported() {
        let e = Ellipsoid::with_cap(&q(&[&[1]]), 10).unwrap();
        assert_eq!(
            e.points_within(&[rat(0)], &rat(10_000)).unwrap_err(),
            Error::TruncationNotCertified { cap: 10 }
        );
    }

    proptest! {
        #[test]
        fn matches_box_search(a in 1i64..=5, b in -2i64..=2, c in 1i64..=5,
                              cx in -7i64..=7, cy in -7i64..=7, bound in 0i64..=12) {
            prop_assume!(a * c - b * b > 0);
            let g = q(&[&[a, b], &[b, c]]);
            let e = Ellipsoid::new(&g).unwrap();
            let center = [frac(cx, 3), frac(cy, 3)];
            let mut got: Vec<Vec<Int>> = e.points_within(&center, &rat(bound)).unwrap().into_iter().map(|p| p.0).collect();
            got.sort();
            let mut want = Vec::new();
            for x in -20..=20 {
                for y in -20..=20 {
                    let d = [rat(x) - &center[0], rat(y) - &center[1]];
                    if e.norm(&d) <= rat(bound) {
                        want.push(vec![int(x), int(y)]);
                    }
                }
            }
            want.sort();
            prop_assert_eq!(got, want);
        }
    }
}

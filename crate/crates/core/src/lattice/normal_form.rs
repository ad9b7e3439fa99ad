//! Hermite and Smith normal forms over the integers.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::ZMatrix;
use crate::num::Int;

/// Column-style Hermite normal form `H = A * T` with `T` unimodular.
#[derive(Clone, Debug)]
pub struct ColumnHnf {
    pub h: ZMatrix,
    pub transform: ZMatrix,
    /// Row index of the pivot of each nonzero column, strictly increasing.
    pub pivot_rows: Vec<usize>,
}

impl ColumnHnf {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    /// The nonzero columns.
    pub fn basis(&self) -> Vec<Vec<Int>> {
        (0..self.rank()).map(|j| self.h.col(j)).collect()
    }

    /// Reduces `v` modulo the column lattice of a full-row-rank HNF. Returns
    /// `(rep, w)` with `v = rep + H w` and `0 <= rep[p_k] < H[p_k, k]`.
    pub fn reduce(&self, v: &[Int]) -> (Vec<Int>, Vec<Int>) {
        let mut rep = v.to_vec();
        let mut w = vec![Int::zero(); self.h.cols()];
        for (k, &p) in self.pivot_rows.iter().enumerate() {
            let piv = &self.h[(p, k)];
            let q = rep[p].div_floor(piv);
            if q.is_zero() {
                continue;
            }
            for i in 0..rep.len() {
                rep[i] -= &q * &self.h[(i, k)];
            }
            w[k] = q;
        }
        (rep, w)
    }
}

fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

fn col_combine(m: &mut ZMatrix, k: usize, j: usize, coeffs: [&Int; 4]) {
    // (col_k, col_j) <- (a col_k + b col_j, c col_k + d col_j)
    let [a, b, c, d] = coeffs;
    for i in 0..m.rows() {
        let u = m[(i, k)].clone();
        let v = m[(i, j)].clone();
        m[(i, k)] = a * &u + b * &v;
        m[(i, j)] = c * &u + d * &v;
    }
}

fn col_axpy(m: &mut ZMatrix, dst: usize, src: usize, f: &Int) {
    for i in 0..m.rows() {
        let v = &m[(i, src)] * f;
        m[(i, dst)] += v;
    }
}

fn row_axpy(m: &mut ZMatrix, dst: usize, src: usize, f: &Int) {
    for j in 0..m.cols() {
        let v = &m[(src, j)] * f;
        m[(dst, j)] += v;
    }
}

fn negate_col(m: &mut ZMatrix, k: usize) {
    for i in 0..m.rows() {
        m[(i, k)] = -m[(i, k)].clone();
    }
}

fn negate_row(m: &mut ZMatrix, k: usize) {
    for j in 0..m.cols() {
        m[(k, j)] = -m[(k, j)].clone();
    }
}

pub fn column_hnf(a: &ZMatrix) -> ColumnHnf {
    let (n, m) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut t = ZMatrix::identity(m);
    let mut pivot_rows = Vec::new();
    let mut k = 0;
    for i in 0..n {
        if k == m {
            break;
        }
        for j in k + 1..m {
            if h[(i, j)].is_zero() {
                continue;
            }
            let (x, y) = (h[(i, k)].clone(), h[(i, j)].clone());
            let (g, s, u) = ext_gcd(&x, &y);
            let c = -(&y / &g);
            let d = &x / &g;
            col_combine(&mut h, k, j, [&s, &u, &c, &d]);
            col_combine(&mut t, k, j, [&s, &u, &c, &d]);
        }
        if h[(i, k)].is_zero() {
            continue;
        }
        if h[(i, k)].is_negative() {
            negate_col(&mut h, k);
            negate_col(&mut t, k);
        }
        let piv = h[(i, k)].clone();
        for j in 0..k {
            let q = h[(i, j)].div_floor(&piv);
            if !q.is_zero() {
                let f = -q;
                col_axpy(&mut h, j, k, &f);
                col_axpy(&mut t, j, k, &f);
            }
        }
        pivot_rows.push(i);
        k += 1;
    }
    ColumnHnf {
        h,
        transform: t,
        pivot_rows,
    }
}

/// `U * A * V = D` with `U`, `V` unimodular and `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: ZMatrix,
    pub d: ZMatrix,
    pub v: ZMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<Int> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(a: &ZMatrix) -> SnfResult {
    let (n, m) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = ZMatrix::identity(n);
    let mut v = ZMatrix::identity(m);
    for t in 0..n.min(m) {
        loop {
            // smallest nonzero |entry| in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..m {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SnfResult { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let piv = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..n {
                let q = d[(i, t)].div_floor(&piv);
                if !q.is_zero() {
                    let f = -q;
                    row_axpy(&mut d, i, t, &f);
                    row_axpy(&mut u, i, t, &f);
                }
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..m {
                let q = d[(t, j)].div_floor(&piv);
                if !q.is_zero() {
                    let f = -q;
                    col_axpy(&mut d, j, t, &f);
                    col_axpy(&mut v, j, t, &f);
                }
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offending =
                (t + 1..n).find(|&i| (t + 1..m).any(|j| !d[(i, j)].is_multiple_of(&piv)));
            match offending {
                Some(i) => {
                    let one = Int::one();
                    row_axpy(&mut d, t, i, &one);
                    row_axpy(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    SnfResult { u, d, v }
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &ZMatrix) -> ZMatrix {
    let q = crate::matrix::QMatrix::from_int(m);
    q.inverse()
        .and_then(|inv| inv.to_integer())
        .expect("matrix is not unimodular")
}

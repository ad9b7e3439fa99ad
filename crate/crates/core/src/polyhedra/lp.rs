//! Exact linear programming: a two-phase tableau simplex with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::matrix::QMatrix;
use crate::num::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardOutcome {
    Optimal {
        value: Rat,
        y: Vec<Rat>,
        /// Multipliers of the equality rows, `c_B^T B^-1`.
        duals: Vec<Rat>,
    },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let inv = self.rows[r][col].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][col].is_zero() {
                continue;
            }
            let f = self.rows[i][col].clone();
            for (v, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        self.basis[r] = col;
    }

    /// Minimizes `cost . y` from the current basic feasible solution, never
    /// letting a column `>= allowed` enter. Returns false when unbounded.
    fn optimize(&mut self, cost: &[Rat], allowed: usize) -> bool {
        loop {
            let m = self.rows.len();
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut d = cost[j].clone();
                for i in 0..m {
                    if !self.rows[i][j].is_zero() {
                        d -= &cost[self.basis[i]] * &self.rows[i][j];
                    }
                }
                if d.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else { return true };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..m {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }
}

/// Solves `min c.y` subject to `A y = b`, `y >= 0`.
pub fn solve_standard(a: &QMatrix, b: &[Rat], c: &[Rat]) -> StandardOutcome {
    let (m, n) = (a.rows(), a.cols());
    let sign: Vec<Rat> = b
        .iter()
        .map(|v| {
            if v.is_negative() {
                -Rat::one()
            } else {
                Rat::one()
            }
        })
        .collect();
    let total = n + m;
    let rows: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rat> = (0..n).map(|j| &a[(i, j)] * &sign[i]).collect();
            row.extend((0..m).map(|k| if k == i { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    let rhs: Vec<Rat> = b.iter().zip(&sign).map(|(v, s)| v * s).collect();
    let mut t = Tableau {
        rows,
        rhs,
        basis: (n..total).collect(),
    };

    let phase1: Vec<Rat> = (0..total)
        .map(|j| if j >= n { Rat::one() } else { Rat::zero() })
        .collect();
    t.optimize(&phase1, n);
    let infeas: Rat = t
        .basis
        .iter()
        .zip(&t.rhs)
        .filter(|(&j, _)| j >= n)
        .map(|(_, v)| v.clone())
        .sum();
    if infeas.is_positive() {
        return StandardOutcome::Infeasible;
    }
    // Drive zero-valued artificials out of the basis where possible.
    for r in 0..m {
        if t.basis[r] < n {
            continue;
        }
        if let Some(col) = (0..n).find(|&j| !t.rows[r][j].is_zero() && !t.basis.contains(&j)) {
            t.pivot(r, col);
        }
    }

    let mut cost: Vec<Rat> = c.to_vec();
    cost.extend((0..m).map(|_| Rat::zero()));
    if !t.optimize(&cost, n) {
        return StandardOutcome::Unbounded;
    }
    let mut y = vec![Rat::zero(); n];
    for (i, &j) in t.basis.iter().enumerate() {
        if j < n {
            y[j] = t.rhs[i].clone();
        }
    }
    let value = y.iter().zip(c).map(|(a, b)| a * b).sum();
    // B^-1 sits in the artificial columns of the tableau
    let duals = (0..m)
        .map(|k| {
            let mut v = Rat::zero();
            for i in 0..m {
                let entry = &t.rows[i][n + k];
                if !entry.is_zero() {
                    v += &cost[t.basis[i]] * entry;
                }
            }
            v * &sign[k]
        })
        .collect();
    StandardOutcome::Optimal { value, y, duals }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Optimal { value: Rat, point: Vec<Rat> },
    Infeasible,
    Unbounded,
}

impl LpResult {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            LpResult::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// `max obj.x` subject to `a_i.x <= c_i` and `e_k.x = f_k`, `x` free.
///
/// Solved through its dual `min c.y + f.z`, `A^T y + E^T z = obj`, `y >= 0`;
/// the primal optimum is recovered from the dual multipliers.
pub fn maximize(
    dim: usize,
    obj: &[Rat],
    ineqs: &[(&[Rat], &Rat)],
    eqs: &[(&[Rat], &Rat)],
) -> LpResult {
    let (mi, me) = (ineqs.len(), eqs.len());
    let cols = mi + 2 * me;
    let a = QMatrix::from_fn(dim, cols, |row, j| {
        if j < mi {
            ineqs[j].0[row].clone()
        } else if j < mi + me {
            eqs[j - mi].0[row].clone()
        } else {
            -eqs[j - mi - me].0[row].clone()
        }
    });
    let cost: Vec<Rat> = (0..cols)
        .map(|j| {
            if j < mi {
                ineqs[j].1.clone()
            } else if j < mi + me {
                eqs[j - mi].1.clone()
            } else {
                -eqs[j - mi - me].1.clone()
            }
        })
        .collect();
    match solve_standard(&a, obj, &cost) {
        StandardOutcome::Optimal { value, duals, .. } => LpResult::Optimal {
            value,
            point: duals,
        },
        StandardOutcome::Unbounded => LpResult::Infeasible,
        StandardOutcome::Infeasible => {
            // Farkas: the primal is infeasible iff some nonnegative combination
            // of the rows vanishes on x while its right-hand side is negative.
            let farkas = QMatrix::from_fn(dim + 1, cols, |row, j| {
                if row < dim {
                    a[(row, j)].clone()
                } else {
                    Rat::one()
                }
            });
            let mut rhs = vec![Rat::zero(); dim];
            rhs.push(Rat::one());
            match solve_standard(&farkas, &rhs, &cost) {
                StandardOutcome::Optimal { value, .. } if value.is_negative() => {
                    LpResult::Infeasible
                }
                _ => LpResult::Unbounded,
            }
        }
    }
}

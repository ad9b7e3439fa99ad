use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{QMatrix, ZMatrix};
use crate::num::{rat_from_int, Int, Rat};

/// A full-rank lattice in `Q^n`, given by a basis matrix whose columns are the
/// generators. The integral structure `Z^n` is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusSpec {
    basis: QMatrix,
}

impl TorusSpec {
    pub fn new(basis: QMatrix) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::NonSquare {
                rows: basis.rows(),
                cols: basis.cols(),
            });
        }
        if basis.det().is_zero() {
            return Err(Error::SingularLattice);
        }
        Ok(TorusSpec { basis })
    }

    /// The standard torus `R^n / Z^n`.
    pub fn standard(n: usize) -> Self {
        TorusSpec {
            basis: QMatrix::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn generator(&self, j: usize) -> Vec<Rat> {
        self.basis.col(j)
    }

    /// Point of `Λ` with the given integer coordinates.
    pub fn point(&self, coords: &[Int]) -> Vec<Rat> {
        let c: Vec<Rat> = coords.iter().map(rat_from_int).collect();
        self.basis.mul_vec(&c)
    }

    /// Coordinates of `x` in the lattice basis.
    pub fn coords(&self, x: &[Rat]) -> Vec<Rat> {
        self.basis
            .inverse()
            .expect("lattice basis is invertible")
            .mul_vec(x)
    }

    pub fn is_positively_oriented(&self) -> bool {
        self.basis.det().is_positive()
    }

    /// A positive definite form that is integral on this lattice. Rational
    /// lattices always carry one: with `k` clearing the denominators of `L^-1`,
    /// `k (L L^T)^-1` sends every generator to an integer covector.
    pub fn polarization_witness(&self) -> QMatrix {
        let inv = self.basis.inverse().expect("lattice basis is invertible");
        let k = rat_from_int(&inv.common_denominator());
        inv.transpose().mul(&inv).scale(&k)
    }
}

/// A symmetric rational form `Q_R` in standard coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizationForm {
    matrix: QMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl PolarizationForm {
    pub fn new(matrix: QMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NonSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if !matrix.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(PolarizationForm { matrix })
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn neg(&self) -> Self {
        PolarizationForm {
            matrix: self.matrix.neg(),
        }
    }

    /// `Q(x, y)`.
    pub fn pair(&self, x: &[Rat], y: &[Rat]) -> Rat {
        crate::num::dot(x, &self.matrix.mul_vec(y))
    }

    /// The covector `q_R(x) = Q_R x`.
    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        self.matrix.mul_vec(x)
    }

    /// Checks that `Q_R` maps each lattice generator to an integer covector.
    pub fn check_integral(&self, torus: &TorusSpec) -> Result<()> {
        if torus.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "lattice has dimension {}, form has {}",
                torus.dim(),
                self.dim()
            )));
        }
        let m = self.matrix.mul(torus.basis());
        for j in 0..m.cols() {
            for i in 0..m.rows() {
                if !m[(i, j)].is_integer() {
                    let col: Vec<String> = m.col(j).iter().map(ToString::to_string).collect();
                    return Err(Error::IntegralityViolation {
                        column: j,
                        value: format!("[{}]", col.join(", ")),
                    });
                }
            }
        }
        Ok(())
    }

    /// Matrix of `q: Λ -> (Z^n)*`; column `j` is `q(λ_j)`.
    pub fn integral_matrix(&self, torus: &TorusSpec) -> Result<ZMatrix> {
        self.check_integral(torus)?;
        Ok(self
            .matrix
            .mul(torus.basis())
            .to_integer()
            .expect("checked integral"))
    }

    /// Determinant of `q` in a positively oriented basis of `Λ` and the
    /// standard dual basis.
    pub fn det_q(&self, torus: &TorusSpec) -> Rat {
        self.matrix.det() * torus.basis().det().abs()
    }

    pub fn inertia(&self) -> Inertia {
        inertia(&self.matrix)
    }
}

/// Signature of a symmetric rational matrix by congruence elimination.
pub fn inertia(a: &QMatrix) -> Inertia {
    let n = a.rows();
    let mut m = a.clone();
    let mut alive: Vec<usize> = (0..n).collect();
    let (mut positive, mut negative) = (0, 0);
    while !alive.is_empty() {
        let pivot = alive.iter().copied().find(|&i| !m[(i, i)].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => {
                let pair = alive.iter().copied().find_map(|i| {
                    alive
                        .iter()
                        .copied()
                        .find(|&j| j != i && !m[(i, j)].is_zero())
                        .map(|j| (i, j))
                });
                let Some((i, j)) = pair else { break };
                // x_i += x_j makes the (i, i) entry 2 m_ij
                for k in 0..n {
                    let v = m[(j, k)].clone();
                    m[(i, k)] += v;
                }
                for k in 0..n {
                    let v = m[(k, j)].clone();
                    m[(k, i)] += v;
                }
                i
            }
        };
        let p = m[(pivot, pivot)].clone();
        if p.is_positive() {
            positive += 1;
        } else {
            negative += 1;
        }
        alive.retain(|&i| i != pivot);
        for &k in &alive {
            let f = &m[(k, pivot)] / &p;
            if f.is_zero() {
                continue;
            }
            for &l in &alive {
                let v = &f * &m[(pivot, l)];
                m[(k, l)] -= v;
            }
        }
        for &k in &alive {
            m[(k, pivot)] = Rat::zero();
            m[(pivot, k)] = Rat::zero();
        }
    }
    Inertia {
        positive,
        negative,
        zero: n - positive - negative,
    }
}

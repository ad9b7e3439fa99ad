//! Theta functions `max_b {Θ_b + s_b}` and the embedding `φ`.

use std::sync::Arc;

use num_traits::Zero;

use super::basis::GeneratorBasis;
use crate::error::{Error, Result};
use crate::num::{dot, half, ints_to_rats, Int, Rat};
use crate::polyhedra::{Constraint, LpResult, RationalPolyhedron};
use crate::tropical::Tropical;

#[derive(Clone, Debug)]
pub struct ThetaSection {
    basis: Arc<GeneratorBasis>,
    coeffs: Vec<Tropical>,
}

impl PartialEq for ThetaSection {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.basis, &other.basis) && self.coeffs == other.coeffs
    }
}

impl ThetaSection {
    pub fn new(basis: Arc<GeneratorBasis>, coeffs: Vec<Tropical>) -> Result<Self> {
        if coeffs.len() != basis.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} generators",
                coeffs.len(),
                basis.len()
            )));
        }
        Ok(ThetaSection { basis, coeffs })
    }

    pub fn from_finite(basis: Arc<GeneratorBasis>, coeffs: Vec<Rat>) -> Result<Self> {
        ThetaSection::new(basis, coeffs.into_iter().map(Tropical::Finite).collect())
    }

    /// `Ξ = max_b Θ_b`.
    pub fn xi(basis: Arc<GeneratorBasis>) -> Self {
        let coeffs = vec![Tropical::one(); basis.len()];
        ThetaSection { basis, coeffs }
    }

    pub fn generator(basis: Arc<GeneratorBasis>, i: usize) -> Self {
        let coeffs = (0..basis.len())
            .map(|j| {
                if i == j {
                    Tropical::one()
                } else {
                    Tropical::zero()
                }
            })
            .collect();
        ThetaSection { basis, coeffs }
    }

    pub fn zero(basis: Arc<GeneratorBasis>) -> Self {
        let coeffs = vec![Tropical::zero(); basis.len()];
        ThetaSection { basis, coeffs }
    }

    pub fn basis(&self) -> &Arc<GeneratorBasis> {
        &self.basis
    }

    pub fn coeffs(&self) -> &[Tropical] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Tropical::is_neg_inf)
    }

    fn finite_terms(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(j, c)| c.finite().map(|v| (j, v)))
    }

    pub fn add_constant(&self, t: &Rat) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.mul(&Tropical::Finite(t.clone())))
            .collect();
        ThetaSection {
            basis: self.basis.clone(),
            coeffs,
        }
    }

    /// Value at a working point, without the linear term of a reduction.
    pub fn eval_working(&self, x: &[Rat]) -> Result<Tropical> {
        let mut best = Tropical::zero();
        for (j, s) in self.finite_terms() {
            let v = self.basis.eval_working(j, x)? + s;
            best = best.add(&Tropical::Finite(v));
        }
        Ok(best)
    }

    pub fn eval(&self, x: &[Rat]) -> Result<Tropical> {
        let v = self.eval_working(&self.basis.project(x))?;
        Ok(v.mul(&Tropical::Finite(self.basis.linear_term(x))))
    }

    /// `φ^{b_i} = min over D_0^{b_i} of Θ - (b_i . x - r(b_i))`, as a linear
    /// program in `(x, u)` over the affine pieces meeting the cell.
    pub fn phi_coordinate(&self, i: usize) -> Result<Rat> {
        if self.is_zero() {
            return Err(Error::NotApplicable("the zero section has no image".into()));
        }
        let basis = &self.basis;
        let k = basis.working_dim();
        let b = ints_to_rats(&basis.working_reps()[i]);
        let mut p = RationalPolyhedron::universe(k + 1);
        for h in &basis.fundamental_cell(i).ineqs {
            let mut a = h.a.clone();
            a.push(Rat::zero());
            p.ineqs.push(Constraint::new(a, h.c.clone()));
        }
        let ri = basis.r_of_b(i);
        for (j, s) in self.finite_terms() {
            for piece in basis.pieces_on_cell(i, j)? {
                // (slope - b) . x - u <= -(constant + s + r(b))
                let mut a: Vec<Rat> = piece.slope.iter().zip(&b).map(|(m, bb)| m - bb).collect();
                a.push(-Rat::from_integer(1.into()));
                p.ineqs
                    .push(Constraint::new(a, -(&piece.constant + s + ri)));
            }
        }
        let mut obj = vec![Rat::zero(); k + 1];
        obj[k] = Rat::from_integer(1.into());
        match p.minimize(&obj) {
            LpResult::Optimal { value, .. } => Ok(value),
            other => unreachable!("bounded feasible program, got {other:?}"),
        }
    }

    pub fn phi_embed(&self) -> Result<Vec<Rat>> {
        (0..self.basis.len())
            .map(|i| self.phi_coordinate(i))
            .collect()
    }

    /// `Θ̂(a) = max_x {a . x - Θ(x)}` for a covector `a` in working
    /// coordinates.
    pub fn legendre_transform(&self, a: &[Int]) -> Result<Rat> {
        if self.is_zero() {
            return Err(Error::NotApplicable(
                "the zero section has no transform".into(),
            ));
        }
        let basis = &self.basis;
        if a.len() != basis.working_dim() {
            return Err(Error::DimensionMismatch(format!(
                "covector has length {}, expected {}",
                a.len(),
                basis.working_dim()
            )));
        }
        let (i, lambda) = basis.class_of(a).expect("the cokernel is finite");
        let at_rep = basis.r_of_b(i) - self.phi_coordinate(i)?;
        let b = ints_to_rats(&basis.working_reps()[i]);
        let q = basis.working_spec().form();
        let ql = q.apply(&lambda);
        Ok(at_rep + dot(&b, &lambda) + dot(&lambda, &ql) * half() - dot(basis.r(), &ql))
    }

    /// The canonical representative `φ(π(s))`.
    pub fn normalize(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        ThetaSection::from_finite(self.basis.clone(), self.phi_embed()?)
    }
}

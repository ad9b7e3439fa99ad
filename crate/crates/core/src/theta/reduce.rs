use super::bundle::{BundleClass, BundleSpec};
use crate::error::{Error, Result};
use crate::lattice::{
    column_hnf, kernel_saturation, AlphaMembership, KernelSplitting, PolarizationForm, TorusSpec,
};
use crate::matrix::{QMatrix, ZMatrix};
use crate::num::{ints_to_rats, rat_from_int, Int, Rat};

/// A semidefinite bundle pushed down to `R^n / Ker(q_R)`.
///
/// Theta functions of the original bundle are `x -> Θ̄(P x) + γ . x` for theta
/// functions `Θ̄` of the reduced, positive definite bundle.
#[derive(Clone, Debug)]
pub struct ReducedBundle {
    pub spec: BundleSpec,
    /// `P: Z^n -> Z^k`, with kernel `Ker(q_R) ∩ Z^n`.
    pub projection: ZMatrix,
    pub gamma: Vec<Int>,
    pub split: KernelSplitting,
}

impl ReducedBundle {
    pub fn project(&self, x: &[Rat]) -> Vec<Rat> {
        QMatrix::from_int(&self.projection).mul_vec(x)
    }

    /// Covector of `(Z^n)*` pulled back from a reduced covector.
    pub fn lift_covector(&self, b: &[Int]) -> Vec<Int> {
        self.projection.vec_mul(b)
    }
}

pub fn reduce_semidefinite(spec: &BundleSpec) -> Result<ReducedBundle> {
    match spec.class() {
        BundleClass::SemidefiniteSectionful => {}
        BundleClass::PositiveDefinite => {
            return Err(Error::NotApplicable("the form is already definite".into()))
        }
        BundleClass::SemidefiniteSectionless => {
            return Err(Error::NotApplicable(
                "alpha is not integral on the kernel".into(),
            ))
        }
        other => return Err(Error::NotApplicable(format!("{other:?} bundle"))),
    }
    let split = kernel_saturation(spec.form(), spec.torus())?;
    let AlphaMembership::Member { r, gamma } =
        crate::lattice::cokernel::alpha_membership_split(spec.alpha(), spec.form(), &split)
    else {
        unreachable!("classified as sectionful")
    };
    let k = split.rank;
    let w = QMatrix::from_int(&split.complement());
    let p = QMatrix::from_int(&split.projection);
    let q_bar = w.transpose().mul(spec.form().matrix()).mul(&w);

    // Basis of P Λ through the HNF of a scaled integer copy.
    let pl = p.mul(spec.torus().basis());
    let d = pl.common_denominator();
    let scaled = pl
        .scale(&rat_from_int(&d))
        .to_integer()
        .expect("denominators cleared");
    let hnf = column_hnf(&scaled);
    let cols: Vec<Vec<Rat>> = hnf
        .basis()
        .iter()
        .map(|c| {
            ints_to_rats(c)
                .into_iter()
                .map(|v| v / rat_from_int(&d))
                .collect()
        })
        .collect();
    debug_assert_eq!(cols.len(), k);
    let lattice = QMatrix::from_cols(&cols, k);
    let alpha_bar = q_bar.mul_vec(&p.mul_vec(&r));
    let reduced = BundleSpec::new(
        TorusSpec::new(lattice)?,
        PolarizationForm::new(q_bar)?,
        alpha_bar,
    )?;
    debug_assert_eq!(reduced.class(), BundleClass::PositiveDefinite);
    Ok(ReducedBundle {
        spec: reduced,
        projection: split.projection.clone(),
        gamma,
        split,
    })
}

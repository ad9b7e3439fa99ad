//! Kernels, saturation and the torsion of `(Z^n)* / q(Λ)`.

use num_traits::Zero;

use super::normal_form::{column_hnf, smith_normal_form, unimodular_inverse, ColumnHnf};
use super::torus::{PolarizationForm, TorusSpec};
use crate::error::{Error, Result};
use crate::matrix::{QMatrix, ZMatrix};
use crate::num::{dot, ints_to_rats, rat_from_int, Int, Rat};

/// Integral splitting `Z^n = W ⊕ K` with `K = Ker(q_R) ∩ Z^n` saturated.
///
/// `unimodular = [W | K]`; `projection` is the first `rank` rows of its
/// inverse, so `projection * W = I` and `projection * K = 0`.
#[derive(Clone, Debug)]
pub struct KernelSplitting {
    pub rank: usize,
    pub unimodular: ZMatrix,
    pub projection: ZMatrix,
    /// Columns of `K`, a basis of `Ker(q_R) ∩ Z^n`.
    pub kernel_z: Vec<Vec<Int>>,
    /// Basis of `Ker(q) = Ker(q_R) ∩ Λ`, as points of `Q^n`.
    pub kernel_lattice: Vec<Vec<Rat>>,
}

impl KernelSplitting {
    pub fn complement(&self) -> ZMatrix {
        let cols: Vec<usize> = (0..self.rank).collect();
        self.unimodular.select_cols(&cols)
    }

    pub fn is_trivial(&self) -> bool {
        self.kernel_z.is_empty()
    }
}

/// Integer basis of the saturation of the column span of a rational matrix
/// with the given null vectors, and a unimodular completion `[rest | sat]`.
fn saturate(vectors: &[Vec<Rat>], n: usize) -> (Vec<Vec<Int>>, ZMatrix) {
    if vectors.is_empty() {
        return (Vec::new(), ZMatrix::identity(n));
    }
    let ints: Vec<Vec<Int>> = vectors
        .iter()
        .map(|v| crate::num::primitive_direction(v).expect("nonzero kernel vector"))
        .collect();
    let k = ints.len();
    let m = ZMatrix::from_cols(&ints, n);
    let snf = smith_normal_form(&m);
    let uinv = unimodular_inverse(&snf.u);
    // The first k columns of U^-1 span the saturation.
    let sat: Vec<Vec<Int>> = (0..k).map(|j| uinv.col(j)).collect();
    let order: Vec<usize> = (k..n).chain(0..k).collect();
    (sat, uinv.select_cols(&order))
}

/// Splitting data for any symmetric form, without a sign requirement.
pub fn split_kernel(form: &PolarizationForm, torus: &TorusSpec) -> Result<KernelSplitting> {
    let m = form.integral_matrix(torus)?;
    let n = form.dim();
    let null = form.matrix().nullspace();
    let (kernel_z, unimodular) = saturate(&null, n);
    let rank = n - kernel_z.len();
    let inv = unimodular_inverse(&unimodular);
    let rows: Vec<usize> = (0..rank).collect();
    let projection = inv.select_rows(&rows);

    let lattice_null = QMatrix::from_int(&m).nullspace();
    let (lattice_coords, _) = saturate(&lattice_null, n);
    let kernel_lattice = lattice_coords.iter().map(|z| torus.point(z)).collect();
    Ok(KernelSplitting {
        rank,
        unimodular,
        projection,
        kernel_z,
        kernel_lattice,
    })
}

pub fn kernel_saturation(form: &PolarizationForm, torus: &TorusSpec) -> Result<KernelSplitting> {
    if form.inertia().negative > 0 {
        return Err(Error::NotSemidefinite);
    }
    split_kernel(form, torus)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaMembership {
    /// `α = q_R(r) + γ` with `γ` integral.
    Member { r: Vec<Rat>, gamma: Vec<Int> },
    /// A vector of `Ker(q_R) ∩ Z^n` on which `α` is not integral.
    NotMember { witness: Vec<Int> },
}

impl AlphaMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, AlphaMembership::Member { .. })
    }
}

pub fn alpha_membership_split(
    alpha: &[Rat],
    form: &PolarizationForm,
    split: &KernelSplitting,
) -> AlphaMembership {
    let n = form.dim();
    let mut on_kernel = Vec::with_capacity(split.kernel_z.len());
    for kv in &split.kernel_z {
        let v = dot(alpha, &ints_to_rats(kv));
        if !v.is_integer() {
            return AlphaMembership::NotMember {
                witness: kv.clone(),
            };
        }
        on_kernel.push(v.to_integer());
    }
    // γ W = 0 and γ K = α K
    let inv = unimodular_inverse(&split.unimodular);
    let mut coeffs = vec![Int::zero(); split.rank];
    coeffs.extend(on_kernel);
    let gamma = inv.vec_mul(&coeffs);

    let w = QMatrix::from_int(&split.complement());
    let rest: Vec<Rat> = alpha
        .iter()
        .zip(&gamma)
        .map(|(a, g)| a - rat_from_int(g))
        .collect();
    let r = if split.rank == 0 {
        vec![Rat::zero(); n]
    } else {
        let reduced = w.transpose().mul(form.matrix()).mul(&w);
        let rhs = w.vec_mul(&rest);
        let y = reduced
            .inverse()
            .expect("form is nondegenerate on the complement")
            .mul_vec(&rhs);
        w.mul_vec(&y)
    };
    AlphaMembership::Member { r, gamma }
}

pub fn alpha_membership(
    alpha: &[Rat],
    form: &PolarizationForm,
    torus: &TorusSpec,
) -> Result<AlphaMembership> {
    if alpha.len() != form.dim() {
        return Err(Error::DimensionMismatch(format!(
            "alpha has length {}, expected {}",
            alpha.len(),
            form.dim()
        )));
    }
    let split = split_kernel(form, torus)?;
    Ok(alpha_membership_split(alpha, form, &split))
}

/// The torsion subgroup of `(Z^n)* / q(Λ)` with canonical representatives.
///
/// Torsion classes live in the saturation of `q(Λ)`, which is the row span of
/// the splitting projection `P`. In those coordinates `q(Λ)` is generated by
/// the columns of `W^T M`; representatives are the box of its column HNF.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub split: KernelSplitting,
    pub hnf: ColumnHnf,
    /// Representatives in reduced coordinates, in canonical order.
    pub reduced_reps: Vec<Vec<Int>>,
    /// Representatives as covectors of `(Z^n)*`.
    pub reps: Vec<Vec<Int>>,
}

impl Cokernel {
    pub fn new(form: &PolarizationForm, torus: &TorusSpec) -> Result<Self> {
        let split = split_kernel(form, torus)?;
        Ok(Self::with_split(form, torus, split))
    }

    pub fn with_split(form: &PolarizationForm, torus: &TorusSpec, split: KernelSplitting) -> Self {
        let m = form
            .integral_matrix(torus)
            .expect("integrality checked by the splitting");
        let reduced = split.complement().transpose().mul(&m);
        let hnf = column_hnf(&reduced);
        debug_assert_eq!(hnf.rank(), split.rank);
        let diag: Vec<Int> = hnf
            .pivot_rows
            .iter()
            .enumerate()
            .map(|(k, &p)| hnf.h[(p, k)].clone())
            .collect();
        let reduced_reps = box_points(&diag);
        let reps = reduced_reps
            .iter()
            .map(|b| split.projection.vec_mul(b))
            .collect();
        Cokernel {
            split,
            hnf,
            reduced_reps,
            reps,
        }
    }

    pub fn torsion_order(&self) -> usize {
        self.reps.len()
    }

    /// Rank of the free part of the cokernel.
    pub fn free_rank(&self) -> usize {
        self.split.kernel_z.len()
    }

    /// Index in `reps` of the class of a covector in the saturation, or `None`
    /// if `a` is not a torsion class.
    pub fn class_of(&self, a: &[Int]) -> Option<usize> {
        let w = self.split.complement();
        let reduced = w.vec_mul(a);
        // a must lie in the row span of P
        if self.split.projection.vec_mul(&reduced) != a {
            return None;
        }
        let (rep, _) = self.hnf.reduce(&reduced);
        self.reduced_reps.iter().position(|r| *r == rep)
    }
}

/// All integer points of `prod [0, d_i)` in lexicographic order.
fn box_points(diag: &[Int]) -> Vec<Vec<Int>> {
    let mut out = vec![Vec::new()];
    for d in diag {
        let mut next = Vec::new();
        for p in &out {
            let mut i = Int::zero();
            while &i < d {
                let mut q = p.clone();
                q.push(i.clone());
                next.push(q);
                i += 1;
            }
        }
        out = next;
    }
    out
}

pub fn coker_torsion_representatives(
    torus: &TorusSpec,
    form: &PolarizationForm,
) -> Result<Vec<Vec<Int>>> {
    Ok(Cokernel::new(form, torus)?.reps)
}

/// Whether `a` lies in `q(Λ)`.
pub fn in_image(form: &PolarizationForm, torus: &TorusSpec, a: &[Int]) -> Result<bool> {
    let hnf = column_hnf(&form.integral_matrix(torus)?);
    let (rep, _) = hnf.reduce(a);
    Ok(rep.iter().all(Zero::is_zero))
}

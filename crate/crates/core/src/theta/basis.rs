//! The generators `Θ_b` of the space of theta functions.

use std::sync::OnceLock;

use rayon::prelude::*;

use super::bundle::{BundleClass, BundleSpec};
use super::reduce::{reduce_semidefinite, ReducedBundle};
use crate::error::{Error, Result};
use crate::lattice::enumerate::DEFAULT_NODE_CAP;
use crate::lattice::{Cokernel, Ellipsoid};
use crate::matrix::QMatrix;
use crate::num::{dot, half, ints_to_rats, rat_from_int, sub_vec, Int, Rat};
use crate::polyhedra::{Constraint, RationalPolyhedron};

/// The affine function `x -> slope . x + constant`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Piece {
    pub slope: Vec<Rat>,
    pub constant: Rat,
}

impl Piece {
    pub fn eval(&self, x: &[Rat]) -> Rat {
        dot(&self.slope, x) + &self.constant
    }
}

/// The Voronoi cell of the lattice for the metric `Q`, centred at the origin.
#[derive(Clone, Debug)]
pub struct VoronoiCell {
    /// Lattice vectors `λ` whose facets `Q(λ, x) <= ½ Q(λ, λ)` bound the cell.
    pub relevant: Vec<Vec<Rat>>,
    pub cell: RationalPolyhedron,
    pub vertices: Vec<Vec<Rat>>,
    /// Largest `Q`-norm squared over the cell.
    pub rho2: Rat,
}

/// Positive definite data in working coordinates: the bundle itself when it
/// is definite, otherwise its reduction along the kernel of the form.
#[derive(Debug)]
pub struct GeneratorBasis {
    spec: BundleSpec,
    reduction: Option<ReducedBundle>,
    working: BundleSpec,
    cokernel: Cokernel,
    reps: Vec<Vec<Int>>,
    r: Vec<Rat>,
    qinv: QMatrix,
    linv: QMatrix,
    centers: Vec<Vec<Rat>>,
    r_of_b: Vec<Rat>,
    ellipsoid: Ellipsoid,
    voronoi: VoronoiCell,
    pieces: OnceLock<Result<Vec<Vec<Vec<Piece>>>>>,
}

fn voronoi_cell(torus: &QMatrix, q: &QMatrix, ellipsoid: &Ellipsoid) -> Result<VoronoiCell> {
    let k = q.rows();
    if k == 0 {
        return Ok(VoronoiCell {
            relevant: Vec::new(),
            cell: RationalPolyhedron::universe(0),
            vertices: vec![Vec::new()],
            rho2: Rat::from_integer(0.into()),
        });
    }
    let mut candidates: Vec<Vec<Rat>> = Vec::new();
    for mask in 1u64..(1u64 << k) {
        let s: Vec<Int> = (0..k).map(|i| Int::from((mask >> i) & 1)).collect();
        let center: Vec<Rat> = s.iter().map(|v| -rat_from_int(v) * half()).collect();
        let (_, arg) = ellipsoid.closest(&center)?;
        for z in arg {
            let v: Vec<Int> = s.iter().zip(&z).map(|(a, b)| a + b * 2).collect();
            candidates.push(torus.mul_vec(&ints_to_rats(&v)));
        }
    }
    let facet_of = |l: &Vec<Rat>| {
        let ql = q.mul_vec(l);
        Constraint::new(ql.clone(), dot(&ql, l) * half())
    };
    let raw = RationalPolyhedron::from_ineqs(k, candidates.iter().map(facet_of).collect());
    let cell = raw.remove_redundancy();
    let mut relevant: Vec<Vec<Rat>> = candidates
        .into_iter()
        .filter(|l| cell.ineqs.contains(&facet_of(l).normalized()))
        .collect();
    relevant.sort();
    relevant.dedup();
    let vertices = cell.vertex_enumeration().vertices;
    let rho2 = vertices
        .iter()
        .map(|v| dot(v, &q.mul_vec(v)))
        .max()
        .expect("a bounded cell has vertices");
    Ok(VoronoiCell {
        relevant,
        cell,
        vertices,
        rho2,
    })
}

impl GeneratorBasis {
    pub fn new(spec: &BundleSpec) -> Result<Self> {
        Self::with_cap(spec, DEFAULT_NODE_CAP)
    }

    /// `cap` bounds the number of nodes visited by each lattice enumeration.
    pub fn with_cap(spec: &BundleSpec, cap: usize) -> Result<Self> {
        let (working, reduction) = match spec.class() {
            BundleClass::PositiveDefinite => (spec.clone(), None),
            BundleClass::SemidefiniteSectionful => {
                let red = reduce_semidefinite(spec)?;
                (red.spec.clone(), Some(red))
            }
            other => return Err(Error::NoSections(format!("{other:?} bundle"))),
        };
        let q = working.form().matrix().clone();
        let l = working.torus().basis().clone();
        let qinv = q.inverse().expect("definite form");
        let linv = l.inverse().expect("lattice basis");
        let r = qinv.mul_vec(working.alpha());
        let cokernel = Cokernel::new(working.form(), working.torus())?;
        let working_reps = cokernel.reps.clone();
        let reps = match &reduction {
            Some(red) => working_reps.iter().map(|b| red.lift_covector(b)).collect(),
            None => working_reps.clone(),
        };
        let centers: Vec<Vec<Rat>> = working_reps
            .iter()
            .map(|b| sub_vec(&qinv.mul_vec(&ints_to_rats(b)), &r))
            .collect();
        let r_of_b = centers
            .iter()
            .map(|c| dot(c, &q.mul_vec(c)) * half())
            .collect();
        let gram = l.transpose().mul(&q).mul(&l);
        let ellipsoid = Ellipsoid::with_cap(&gram, cap)?;
        let voronoi = voronoi_cell(&l, &q, &ellipsoid)?;
        Ok(GeneratorBasis {
            spec: spec.clone(),
            reduction,
            working,
            cokernel,
            reps,
            r,
            qinv,
            linv,
            centers,
            r_of_b,
            ellipsoid,
            voronoi,
            pieces: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> &BundleSpec {
        &self.spec
    }

    pub fn working_spec(&self) -> &BundleSpec {
        &self.working
    }

    pub fn reduction(&self) -> Option<&ReducedBundle> {
        self.reduction.as_ref()
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Representatives `B` as covectors of the original `(Z^n)*`.
    pub fn reps(&self) -> &[Vec<Int>] {
        &self.reps
    }

    /// Representatives in working coordinates.
    pub fn working_reps(&self) -> &[Vec<Int>] {
        &self.cokernel.reps
    }

    pub fn working_dim(&self) -> usize {
        self.working.dim()
    }

    /// `r` with `α = q_R(r)` in working coordinates.
    pub fn r(&self) -> &[Rat] {
        &self.r
    }

    /// `q_R^-1(b) - r`, the centre of the fundamental cell of `Θ_b`.
    pub fn center(&self, i: usize) -> &[Rat] {
        &self.centers[i]
    }

    /// `r(b) = ½ Q(q_R^-1(b) - r, q_R^-1(b) - r)`.
    pub fn r_of_b(&self, i: usize) -> &Rat {
        &self.r_of_b[i]
    }

    pub fn voronoi(&self) -> &VoronoiCell {
        &self.voronoi
    }

    pub fn ellipsoid(&self) -> &Ellipsoid {
        &self.ellipsoid
    }

    pub fn node_cap(&self) -> usize {
        self.ellipsoid.cap()
    }

    fn q(&self) -> &QMatrix {
        self.working.form().matrix()
    }

    fn lattice(&self) -> &QMatrix {
        self.working.torus().basis()
    }

    /// Working coordinates of an original point.
    pub fn project(&self, x: &[Rat]) -> Vec<Rat> {
        match &self.reduction {
            Some(red) => red.project(x),
            None => x.to_vec(),
        }
    }

    /// The linear term `γ . x` split off by the reduction.
    pub fn linear_term(&self, x: &[Rat]) -> Rat {
        match &self.reduction {
            Some(red) => dot(&ints_to_rats(&red.gamma), x),
            None => Rat::from_integer(0.into()),
        }
    }

    /// Index of the class of a working covector and the `λ` with
    /// `a = b_i + q(λ)`.
    pub fn class_of(&self, a: &[Int]) -> Option<(usize, Vec<Rat>)> {
        let i = self.cokernel.class_of(a)?;
        let diff: Vec<Rat> = a
            .iter()
            .zip(&self.cokernel.reps[i])
            .map(|(x, y)| rat_from_int(&(x - y)))
            .collect();
        Some((i, self.qinv.mul_vec(&diff)))
    }

    /// `Θ` for the coset `μ ∈ Λ + c` at a working point.
    fn coset_theta(&self, c: &[Rat], x: &[Rat]) -> Result<Rat> {
        let w = self.linv.mul_vec(&sub_vec(x, c));
        let (dist, _) = self.ellipsoid.closest(&w)?;
        let qx = self.q().mul_vec(x);
        Ok(dot(x, &qx) * half() + dot(&self.r, &qx) - dist * half())
    }

    /// `Θ_{b_i}` at a working point.
    pub fn eval_working(&self, i: usize, x: &[Rat]) -> Result<Rat> {
        self.coset_theta(&self.centers[i], x)
    }

    /// `Θ_{b_i}` at an original point.
    pub fn eval(&self, i: usize, x: &[Rat]) -> Result<Rat> {
        Ok(self.eval_working(i, &self.project(x))? + self.linear_term(x))
    }

    /// The piece of `Θ` contributed by `μ = λ + c_b`.
    pub fn piece_for(&self, mu: &[Rat]) -> Piece {
        let q = self.q();
        let slope = q.mul_vec(&crate::num::add_vec(mu, &self.r));
        let constant = -(dot(mu, &q.mul_vec(mu)) * half());
        Piece { slope, constant }
    }

    /// The maximizing pieces of `Θ_{b_i}` at a working point.
    pub fn active_pieces(&self, i: usize, x: &[Rat]) -> Result<Vec<Piece>> {
        let c = &self.centers[i];
        let w = self.linv.mul_vec(&sub_vec(x, c));
        let (_, arg) = self.ellipsoid.closest(&w)?;
        Ok(arg
            .iter()
            .map(|z| {
                let mu = crate::num::add_vec(&self.lattice().mul_vec(&ints_to_rats(z)), c);
                self.piece_for(&mu)
            })
            .collect())
    }

    /// Pieces of `Θ_{b_j}` for the `μ ∈ Λ + c_{b_j}` with
    /// `Q(μ - center, μ - center) <= bound`, in working coordinates.
    pub fn pieces_within(&self, j: usize, center: &[Rat], bound: &Rat) -> Result<Vec<Piece>> {
        let cj = &self.centers[j];
        let w = self.linv.mul_vec(&sub_vec(center, cj));
        let mut out: Vec<Piece> = self
            .ellipsoid
            .points_within(&w, bound)?
            .into_iter()
            .map(|(z, _)| {
                let mu = crate::num::add_vec(&self.lattice().mul_vec(&ints_to_rats(&z)), cj);
                self.piece_for(&mu)
            })
            .collect();
        out.sort();
        Ok(out)
    }

    /// `D_0^b = c_b + Vor(Λ)`, where `Θ_b` is affine with slope `b`.
    pub fn fundamental_cell(&self, i: usize) -> RationalPolyhedron {
        self.voronoi.cell.translate(&self.centers[i])
    }

    /// Pieces `μ ∈ Λ + c_{b_j}` whose cells `μ + Vor` meet `D_0^{b_i}`.
    /// Two translates of the symmetric cell `V` meet exactly when the
    /// difference of their centres lies in `2V`.
    fn pieces_between(&self, i: usize, j: usize) -> Result<Vec<Piece>> {
        let ci = &self.centers[i];
        let cj = &self.centers[j];
        let q = self.q();
        let bound = &self.voronoi.rho2 * Rat::from_integer(4.into());
        let w = self.linv.mul_vec(&sub_vec(ci, cj));
        let pts = self.ellipsoid.points_within(&w, &bound)?;
        let facets: Vec<(Vec<Rat>, Rat)> = self
            .voronoi
            .relevant
            .iter()
            .map(|l| {
                let ql = q.mul_vec(l);
                let n = dot(&ql, l);
                (ql, n)
            })
            .collect();
        let mut out: Vec<Piece> = pts
            .into_iter()
            .filter_map(|(z, _)| {
                let mu = crate::num::add_vec(&self.lattice().mul_vec(&ints_to_rats(&z)), cj);
                let d = sub_vec(&mu, ci);
                facets
                    .iter()
                    .all(|(ql, n)| dot(ql, &d) <= *n)
                    .then(|| self.piece_for(&mu))
            })
            .collect();
        out.sort();
        Ok(out)
    }

    fn all_pieces(&self) -> Result<&Vec<Vec<Vec<Piece>>>> {
        let cached = self.pieces.get_or_init(|| {
            let m = self.len();
            (0..m)
                .into_par_iter()
                .map(|i| {
                    (0..m)
                        .map(|j| self.pieces_between(i, j))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        });
        cached.as_ref().map_err(Clone::clone)
    }

    /// Every affine piece of `Θ_{b_j}` that can be maximal somewhere on
    /// `D_0^{b_i}`, in working coordinates.
    pub fn pieces_on_cell(&self, i: usize, j: usize) -> Result<&[Piece]> {
        Ok(&self.all_pieces()?[i][j])
    }
}

/// Value of `Θ_b` for an arbitrary covector `b` of the original lattice
/// dual, at an original point.
pub fn theta_generator_eval(basis: &GeneratorBasis, b: &[Int], x: &[Rat]) -> Result<Rat> {
    let working_b: Vec<Int> = match basis.reduction() {
        Some(red) => red.split.complement().vec_mul(b),
        None => b.to_vec(),
    };
    let c = sub_vec(&basis.qinv.mul_vec(&ints_to_rats(&working_b)), &basis.r);
    Ok(basis.coset_theta(&c, &basis.project(x))? + basis.linear_term(x))
}

pub fn fundamental_cell(basis: &GeneratorBasis, i: usize) -> RationalPolyhedron {
    basis.fundamental_cell(i)
}

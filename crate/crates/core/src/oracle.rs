//! Slow brute-force counterparts of the fast routines, used for cross-checks.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{PolarizationForm, TorusSpec};
use crate::matrix::QMatrix;
use crate::num::{add_vec, dot, half, int, ints_to_rats, sub_vec, Int, Rat};
use crate::polyhedra::lp::{solve_standard, StandardOutcome};
use crate::polyhedra::{Constraint, RationalPolyhedron};
use crate::theta::BundleSpec;
use crate::tropical::{Tropical, TropicalMatrix};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Tropical determinant by walking all `l!` permutations.
pub fn trop_det_by_permutations(m: &TropicalMatrix) -> Result<Tropical> {
    if m.rows() != m.cols() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let mut best = Tropical::NegInf;
    for sigma in permutations(m.rows()) {
        let term = sigma
            .iter()
            .enumerate()
            .fold(Tropical::one(), |acc, (i, &s)| acc.mul(m.get(s, i)));
        best = best.add(&term);
    }
    Ok(best)
}

/// Whether `a - b` lies in `q(Λ)`, decided by solving `M z = a - b` over `Q`.
/// Only meaningful for nondegenerate forms.
pub fn congruent_mod_image(m: &QMatrix, a: &[Int], b: &[Int]) -> bool {
    let diff: Vec<Int> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    match m.solve(&ints_to_rats(&diff)) {
        Some(z) => z.iter().all(|v| v.is_integer()) && m.mul_vec(&z) == ints_to_rats(&diff),
        None => false,
    }
}

/// Distinct classes of `(Z^n)* / q(Λ)` met by the box `[-radius, radius]^n`,
/// for a nondegenerate form. Returns the first member found of each class.
pub fn cosets_in_box(
    form: &PolarizationForm,
    torus: &TorusSpec,
    radius: i64,
) -> Result<Vec<Vec<Int>>> {
    let m = QMatrix::from_int(&form.integral_matrix(torus)?);
    if m.det().is_zero() {
        return Err(Error::NotApplicable(
            "coset enumeration needs a nondegenerate form".into(),
        ));
    }
    let n = form.dim();
    let mut classes: Vec<Vec<Int>> = Vec::new();
    let mut point = vec![-radius; n];
    loop {
        let a: Vec<Int> = point.iter().map(|&v| int(v)).collect();
        if !classes.iter().any(|c| congruent_mod_image(&m, &a, c)) {
            classes.push(a);
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(classes);
            }
            point[i] += 1;
            if point[i] <= radius {
                break;
            }
            point[i] = -radius;
            i += 1;
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Vertices of a pointed polyhedron by solving every square subsystem of
/// inequalities (together with the equations) and keeping feasible points.
pub fn vertices_by_subsets(p: &RationalPolyhedron) -> Vec<Vec<Rat>> {
    let n = p.ambient_dim;
    let eq_rows: Vec<Vec<Rat>> = p.eqs.iter().map(|h| h.a.clone()).collect();
    let eq_rank = if eq_rows.is_empty() {
        0
    } else {
        QMatrix::from_rows(eq_rows).rank()
    };
    let mut out = Vec::new();
    for s in subsets(p.ineqs.len(), n - eq_rank) {
        let mut rows: Vec<Vec<Rat>> = p.eqs.iter().map(|h| h.a.clone()).collect();
        let mut rhs: Vec<Rat> = p.eqs.iter().map(|h| h.c.clone()).collect();
        for &i in &s {
            rows.push(p.ineqs[i].a.clone());
            rhs.push(p.ineqs[i].c.clone());
        }
        if rows.is_empty() {
            if n == 0 && p.contains(&[]) {
                out.push(Vec::new());
            }
            continue;
        }
        let m = QMatrix::from_rows(rows);
        if m.rank() < n {
            continue;
        }
        if let Some(x) = m.solve(&rhs) {
            if m.mul_vec(&x) == rhs && p.contains(&x) {
                out.push(x);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn box_points(n: usize, radius: i64) -> Vec<Vec<Int>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Int>| {
                (-radius..=radius).map(move |v| {
                    let mut q = p.clone();
                    q.push(int(v));
                    q
                })
            })
            .collect();
    }
    out
}

/// `(q_R^-1(b) - r, Q, L)` for a positive definite bundle.
fn definite_data(spec: &BundleSpec, b: &[Int]) -> (Vec<Rat>, QMatrix, QMatrix) {
    let q = spec.form().matrix().clone();
    let qinv = q.inverse().expect("definite form");
    let r = qinv.mul_vec(spec.alpha());
    let c = sub_vec(&qinv.mul_vec(&ints_to_rats(b)), &r);
    (c, q, spec.torus().basis().clone())
}

/// Integer point nearest to `L^-1 (p - c)`, the lattice coordinates of the
/// centre `μ = λ + c` closest to `p` in the naive sense.
fn rounded_coords(l: &QMatrix, p: &[Rat], c: &[Rat]) -> Vec<Int> {
    l.inverse()
        .expect("lattice basis")
        .mul_vec(&sub_vec(p, c))
        .iter()
        .map(|v| v.round().to_integer())
        .collect()
}

/// The affine functions `x -> (b + q(λ)) . x - ½ Q(λ + c, λ + c)` inside the
/// max defining `Θ_b`, for `λ = L z` with `z` in a box of the given radius
/// around the lattice coordinates of `near - c`.
pub fn theta_pieces_in_box(
    spec: &BundleSpec,
    b: &[Int],
    near: &[Rat],
    radius: i64,
) -> Vec<(Vec<Rat>, Rat)> {
    let (c, q, l) = definite_data(spec, b);
    let bq = ints_to_rats(b);
    let z0 = rounded_coords(&l, near, &c);
    box_points(spec.dim(), radius)
        .into_iter()
        .map(|z| {
            let z: Vec<Int> = z.iter().zip(&z0).map(|(a, b)| a + b).collect();
            let lambda = l.mul_vec(&ints_to_rats(&z));
            let slope = add_vec(&bq, &q.mul_vec(&lambda));
            let mu = add_vec(&lambda, &c);
            (slope, -(dot(&mu, &q.mul_vec(&mu)) * half()))
        })
        .collect()
}

/// `Θ_b(x)` as the max over a box around `x`.
pub fn theta_by_box(spec: &BundleSpec, b: &[Int], x: &[Rat], radius: i64) -> Rat {
    theta_pieces_in_box(spec, b, x, radius)
        .iter()
        .map(|(s, k)| dot(s, x) + k)
        .max()
        .expect("nonempty box")
}

/// `min over D_0^{b_i} of Θ - Θ_{b_i}` for `Θ = max_j {Θ_{b_j} + s_j}`, by
/// evaluating at every point cut out by `n` of the candidate breakpoint
/// hyperplanes: facets of the cell and equalities between affine pieces
/// that can be maximal on it.
pub fn phi_by_breakpoints(
    spec: &BundleSpec,
    reps: &[Vec<Int>],
    coeffs: &[Tropical],
    i: usize,
    radius: i64,
) -> Rat {
    let n = spec.dim();
    let (ci, q, l) = definite_data(spec, &reps[i]);
    let lambdas: Vec<Vec<Rat>> = box_points(n, 2)
        .into_iter()
        .filter(|z| z.iter().any(|v| !v.is_zero()))
        .map(|z| l.mul_vec(&ints_to_rats(&z)))
        .collect();
    let mut cell = RationalPolyhedron::universe(n);
    for lam in &lambdas {
        let ql = q.mul_vec(lam);
        let c = dot(&ql, lam) * half() + dot(&ql, &ci);
        cell.add_ineq(ql, c);
    }
    let mut all = Vec::new();
    let mut near = Vec::new();
    for (j, s) in coeffs.iter().enumerate() {
        let Some(s) = s.finite() else { continue };
        let (cj, _, _) = definite_data(spec, &reps[j]);
        let bq = ints_to_rats(&reps[j]);
        let z0 = rounded_coords(&l, &ci, &cj);
        for z in box_points(n, radius) {
            let z: Vec<Int> = z.iter().zip(&z0).map(|(a, b)| a + b).collect();
            let lambda = l.mul_vec(&ints_to_rats(&z));
            let mu = add_vec(&lambda, &cj);
            let piece = (
                add_vec(&bq, &q.mul_vec(&lambda)),
                s - dot(&mu, &q.mul_vec(&mu)) * half(),
            );
            let d = sub_vec(&mu, &ci);
            if lambdas.iter().all(|lam| {
                let ql = q.mul_vec(lam);
                dot(&ql, &d) <= dot(&ql, lam)
            }) {
                near.push(piece.clone());
            }
            all.push(piece);
        }
    }
    let mut planes: Vec<Constraint> = cell.ineqs.iter().map(Constraint::normalized).collect();
    for (a, p) in near.iter().enumerate() {
        for other in &near[a + 1..] {
            let normal = sub_vec(&p.0, &other.0);
            if normal.iter().any(|v| !v.is_zero()) {
                planes.push(Constraint::new(normal, &other.1 - &p.1).normalized());
            }
        }
    }
    planes.sort();
    planes.dedup();
    let mut points = BTreeSet::new();
    for sub in subsets(planes.len(), n) {
        let x = if n == 0 {
            Vec::new()
        } else {
            let m = QMatrix::from_rows(sub.iter().map(|&k| planes[k].a.clone()).collect());
            let rhs: Vec<Rat> = sub.iter().map(|&k| planes[k].c.clone()).collect();
            if m.rank() < n {
                continue;
            }
            match m.solve(&rhs) {
                Some(x) => x,
                None => continue,
            }
        };
        if cell.contains(&x) {
            points.insert(x);
        }
    }
    let best = points
        .iter()
        .map(|x| {
            let f = all
                .iter()
                .map(|(s, k)| dot(s, x) + k)
                .max()
                .expect("finite section");
            f - theta_by_box(spec, &reps[i], x, radius)
        })
        .min();
    best.expect("the cell has vertices")
}

/// `max_x {a . x - max_p (s_p . x + k_p)}` through the lower convex envelope:
/// the least `-Σ w_p k_p` over convex weights with `Σ w_p s_p = a`.
pub fn legendre_by_envelope(pieces: &[(Vec<Rat>, Rat)], a: &[Rat]) -> Option<Rat> {
    let n = a.len();
    let m = QMatrix::from_fn(n + 1, pieces.len(), |row, p| {
        if row < n {
            pieces[p].0[row].clone()
        } else {
            Rat::from_integer(1.into())
        }
    });
    let mut rhs = a.to_vec();
    rhs.push(Rat::from_integer(1.into()));
    let cost: Vec<Rat> = pieces.iter().map(|(_, k)| -k.clone()).collect();
    match solve_standard(&m, &rhs, &cost) {
        StandardOutcome::Optimal { value, .. } => Some(value),
        _ => None,
    }
}

/// `φ^{b_i} = r(b_i) - Θ̂(b_i)`, with `Θ̂` from the lower envelope of the box
/// pieces of every `Θ_{b_j} + s_j` around `c_i`.
pub fn phi_by_legendre(
    spec: &BundleSpec,
    reps: &[Vec<Int>],
    coeffs: &[Tropical],
    i: usize,
    radius: i64,
) -> Option<Rat> {
    let (ci, q, _) = definite_data(spec, &reps[i]);
    let mut pieces = Vec::new();
    for (j, s) in coeffs.iter().enumerate() {
        let Some(s) = s.finite() else { continue };
        for (slope, k) in theta_pieces_in_box(spec, &reps[j], &ci, radius) {
            pieces.push((slope, k + s));
        }
    }
    let hat = legendre_by_envelope(&pieces, &ints_to_rats(&reps[i]))?;
    Some(dot(&ci, &q.mul_vec(&ci)) * half() - hat)
}

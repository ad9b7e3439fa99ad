//! Weighted rational polyhedral complexes of codimension one, in `R^n` or
//! on a torus `R^n / Λ`.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::num::{
    add_vec, floor, ints_to_rats, primitive_direction, rat_from_int, scale_vec, sub_vec, Int, Rat,
};
use crate::serde_rat;

/// The convex hull of `vertices` plus the cone over `rays`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    #[serde(with = "serde_rat::vecvec")]
    pub vertices: Vec<Vec<Rat>>,
    #[serde(
        with = "serde_rat::vecvec",
        default,
        skip_serializing_if = "Vec::is_empty"
    )]
    pub rays: Vec<Vec<Rat>>,
    pub weight: i64,
}

impl Cell {
    pub fn point(p: Vec<Rat>, weight: i64) -> Self {
        Cell {
            vertices: vec![p],
            rays: Vec::new(),
            weight,
        }
    }

    pub fn segment(a: Vec<Rat>, b: Vec<Rat>, weight: i64) -> Self {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        Cell {
            vertices: vec![a, b],
            rays: Vec::new(),
            weight,
        }
    }

    pub fn ray(a: Vec<Rat>, dir: Vec<Rat>, weight: i64) -> Self {
        Cell {
            vertices: vec![a],
            rays: vec![dir],
            weight,
        }
    }

    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1 + self.rays.len()
    }

    /// Start point and direction of a one-dimensional cell, and whether it
    /// is bounded.
    pub fn as_edge(&self) -> Option<(&[Rat], Vec<Rat>, bool)> {
        match (self.vertices.len(), self.rays.len()) {
            (2, 0) => Some((
                &self.vertices[0],
                sub_vec(&self.vertices[1], &self.vertices[0]),
                true,
            )),
            (1, 1) => Some((&self.vertices[0], self.rays[0].clone(), false)),
            _ => None,
        }
    }

    pub fn translate(&self, v: &[Rat]) -> Cell {
        Cell {
            vertices: self.vertices.iter().map(|p| add_vec(p, v)).collect(),
            rays: self.rays.clone(),
            weight: self.weight,
        }
    }

    /// Exact membership for points, segments and rays.
    pub fn contains(&self, x: &[Rat]) -> bool {
        if self.vertices.len() == 1 && self.rays.is_empty() {
            return self.vertices[0] == x;
        }
        let Some((a, d, bounded)) = self.as_edge() else {
            return false;
        };
        let w = sub_vec(x, a);
        let Some(k) = d.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        let t = &w[k] / &d[k];
        if scale_vec(&t, &d) != w || t < Rat::zero() {
            return false;
        }
        !bounded || t <= Rat::from_integer(1.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedComplex {
    pub ambient_dim: usize,
    pub torus: bool,
    /// Rows of the lattice basis matrix (columns generate Λ) on a torus.
    #[serde(
        with = "serde_rat::vecvec",
        default,
        skip_serializing_if = "Vec::is_empty"
    )]
    pub lattice: Vec<Vec<Rat>>,
    pub cells: Vec<Cell>,
}

/// Outcome of the balancing check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Balancing {
    Balanced,
    Unbalanced {
        #[serde(with = "serde_rat::vec")]
        vertex: Vec<Rat>,
        #[serde(with = "serde_rat::intvec")]
        sum: Vec<Int>,
    },
}

impl Balancing {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Balancing::Balanced)
    }
}

impl WeightedComplex {
    pub fn plane(ambient_dim: usize, cells: Vec<Cell>) -> Self {
        let mut c = WeightedComplex {
            ambient_dim,
            torus: false,
            lattice: Vec::new(),
            cells,
        };
        c.cells.sort();
        c
    }

    /// A complex on `R^n / Λ`, with cells reduced to one representative per
    /// `Λ`-orbit.
    pub fn on_torus(lattice: &QMatrix, cells: Vec<Cell>) -> Self {
        let mut c = WeightedComplex {
            ambient_dim: lattice.rows(),
            torus: true,
            lattice: lattice.to_rows(),
            cells: Vec::new(),
        };
        let mut seen = BTreeMap::new();
        for cell in cells {
            let canon = c.canonical_cell(&cell);
            let key = (canon.vertices.clone(), canon.rays.clone());
            seen.entry(key).or_insert(canon);
        }
        c.cells = seen.into_values().collect();
        c
    }

    pub fn lattice_matrix(&self) -> Option<QMatrix> {
        self.torus.then(|| QMatrix::from_rows(self.lattice.clone()))
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `Λ`-translate of `x` whose lattice coordinates lie in `[0, 1)^n`.
    pub fn canonical_point(&self, x: &[Rat]) -> Vec<Rat> {
        match self.lattice_matrix() {
            Some(l) => {
                let z: Vec<Int> = l
                    .inverse()
                    .expect("lattice basis")
                    .mul_vec(x)
                    .iter()
                    .map(floor)
                    .collect();
                sub_vec(x, &l.mul_vec(&ints_to_rats(&z)))
            }
            None => x.to_vec(),
        }
    }

    fn barycenter(cell: &Cell) -> Vec<Rat> {
        let k = Rat::from_integer((cell.vertices.len() as i64).into());
        let sum = cell
            .vertices
            .iter()
            .fold(vec![Rat::zero(); cell.vertices[0].len()], |acc, v| {
                add_vec(&acc, v)
            });
        scale_vec(&k.recip(), &sum)
    }

    /// The translate of a cell whose vertex barycentre is canonical.
    pub fn canonical_cell(&self, cell: &Cell) -> Cell {
        let b = Self::barycenter(cell);
        let shift = sub_vec(&self.canonical_point(&b), &b);
        let mut c = cell.translate(&shift);
        c.vertices.sort();
        c
    }

    pub fn translate(&self, v: &[Rat]) -> WeightedComplex {
        let cells = self.cells.iter().map(|c| c.translate(v)).collect();
        match self.lattice_matrix() {
            Some(l) => WeightedComplex::on_torus(&l, cells),
            None => WeightedComplex::plane(self.ambient_dim, cells),
        }
    }

    /// Splits every bounded edge at its midpoint.
    pub fn subdivide(&self) -> WeightedComplex {
        let mut cells = Vec::new();
        for c in &self.cells {
            if c.vertices.len() == 2 && c.rays.is_empty() {
                let m = Self::barycenter(c);
                cells.push(Cell::segment(c.vertices[0].clone(), m.clone(), c.weight));
                cells.push(Cell::segment(m, c.vertices[1].clone(), c.weight));
            } else {
                cells.push(c.clone());
            }
        }
        match self.lattice_matrix() {
            Some(l) => WeightedComplex::on_torus(&l, cells),
            None => WeightedComplex::plane(self.ambient_dim, cells),
        }
    }

    /// The sum of two divisors on the same ambient space; weights of
    /// coincident cells add.
    pub fn union(&self, other: &WeightedComplex) -> Result<WeightedComplex> {
        if self.ambient_dim != other.ambient_dim
            || self.torus != other.torus
            || self.lattice != other.lattice
        {
            return Err(Error::AmbientMismatch);
        }
        let mut sums: BTreeMap<(Vec<Vec<Rat>>, Vec<Vec<Rat>>), i64> = BTreeMap::new();
        for c in self.cells.iter().chain(&other.cells) {
            let c = self.canonical_cell(c);
            *sums.entry((c.vertices, c.rays)).or_insert(0) += c.weight;
        }
        let mut out = self.clone();
        out.cells = sums
            .into_iter()
            .map(|((vertices, rays), weight)| Cell {
                vertices,
                rays,
                weight,
            })
            .collect();
        Ok(out)
    }

    /// Lattice translates `L z`, `z ∈ [-2, 2]^n`, that can carry a canonical
    /// cell through a canonical point.
    fn nearby_translates(&self) -> Vec<Vec<Rat>> {
        let Some(l) = self.lattice_matrix() else {
            return vec![vec![Rat::zero(); self.ambient_dim]];
        };
        let mut zs: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..self.ambient_dim {
            zs = zs
                .into_iter()
                .flat_map(|z| {
                    (-2..=2).map(move |v| {
                        let mut w = z.clone();
                        w.push(v);
                        w
                    })
                })
                .collect();
        }
        zs.iter()
            .map(|z| {
                l.mul_vec(
                    &z.iter()
                        .map(|&v| Rat::from_integer(v.into()))
                        .collect::<Vec<_>>(),
                )
            })
            .collect()
    }

    /// Whether `x` (modulo `Λ` on a torus) lies on the support.
    pub fn contains_point(&self, x: &[Rat]) -> bool {
        let x = self.canonical_point(x);
        let shifts = self.nearby_translates();
        self.cells
            .iter()
            .any(|c| shifts.iter().any(|s| c.contains(&add_vec(&x, s))))
    }

    /// Checks `Σ w(F) v_F = 0` at every vertex, with `v_F` the primitive
    /// integer direction of `F` leaving the vertex. In dimension one there is
    /// nothing to check.
    pub fn validate_balancing(&self) -> Result<Balancing> {
        match self.ambient_dim {
            0 | 1 => return Ok(Balancing::Balanced),
            2 => {}
            n => return Err(Error::UnsupportedDimension(n)),
        }
        let mut sums: BTreeMap<Vec<Rat>, Vec<Int>> = BTreeMap::new();
        for c in &self.cells {
            let Some((a, d, bounded)) = c.as_edge() else {
                return Err(Error::NotPureCurve);
            };
            let dir = primitive_direction(&d).ok_or(Error::NotPureCurve)?;
            let w = Int::from(c.weight);
            let mut add = |p: &[Rat], sign: i64| {
                let entry = sums
                    .entry(self.canonical_point(p))
                    .or_insert_with(|| vec![Int::zero(); self.ambient_dim]);
                for (e, v) in entry.iter_mut().zip(&dir) {
                    *e += v * &w * sign;
                }
            };
            add(a, 1);
            if bounded {
                add(&add_vec(a, &d), -1);
            }
        }
        Ok(sums
            .into_iter()
            .find(|(_, s)| s.iter().any(|v| !v.is_zero()))
            .map_or(Balancing::Balanced, |(vertex, sum)| Balancing::Unbalanced {
                vertex,
                sum,
            }))
    }

    /// Total weight for complexes of points (dimension one).
    pub fn degree(&self) -> i64 {
        self.cells.iter().map(|c| c.weight).sum()
    }
}

pub fn validate_balancing(c: &WeightedComplex) -> Result<Balancing> {
    c.validate_balancing()
}

/// `w` for an integer slope difference: its lattice length.
pub(crate) fn lattice_weight(d: &[Rat]) -> i64 {
    let dir = primitive_direction(d).expect("distinct slopes");
    let k = d
        .iter()
        .zip(&dir)
        .find(|(_, p)| !p.is_zero())
        .map(|(v, p)| v / rat_from_int(p));
    k.expect("nonzero")
        .to_integer()
        .to_i64()
        .expect("small weight")
        .abs()
}

//! Theta functions through prescribed points via the tropical Vandermonde
//! determinant.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::num::Rat;
use crate::theta::{GeneratorBasis, ThetaSection};
use crate::tropical::{trop_det, Tropical, TropicalMatrix};

/// `V(x) = max_σ {Θ_{b_σ(1)}(x) + Σ_{i>=2} Θ_{b_σ(i)}(q_{i-1})}`, whose
/// coefficient on `Θ_{b_j}` is the tropical cofactor of the first row.
pub fn vandermonde_interpolate(
    basis: Arc<GeneratorBasis>,
    points: &[Vec<Rat>],
) -> Result<ThetaSection> {
    let l = basis.len();
    if l < 2 {
        return Err(Error::DegenerateBasis(l));
    }
    if points.len() != l - 1 {
        return Err(Error::PointCount {
            expected: l - 1,
            got: points.len(),
        });
    }
    let mut entries = vec![Tropical::one(); l];
    for q in points {
        if q.len() != basis.spec().dim() {
            return Err(Error::DimensionMismatch(format!(
                "point has length {}, expected {}",
                q.len(),
                basis.spec().dim()
            )));
        }
        let w = basis.project(q);
        for j in 0..l {
            entries.push(Tropical::Finite(basis.eval_working(j, &w)?));
        }
    }
    let m = TropicalMatrix::new(l, l, entries)?;
    let coeffs = (0..l)
        .map(|j| trop_det(&m.minor(0, j).expect("square")))
        .collect::<Result<Vec<_>>>()?;
    ThetaSection::new(basis, coeffs)
}

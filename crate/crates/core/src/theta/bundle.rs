use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{alpha_membership, AlphaMembership, Inertia, PolarizationForm, TorusSpec};
use crate::matrix::QMatrix;
use crate::num::{add_vec, Rat};
use crate::serde_rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BundleClass {
    PositiveDefinite,
    /// Positive semidefinite with a kernel, `α ∈ Im q_R + (Z^n)*`.
    SemidefiniteSectionful,
    /// Positive semidefinite with a kernel on which `α` is not integral.
    SemidefiniteSectionless,
    Indefinite,
    NegativeDefinite,
    /// Negative semidefinite with a kernel, not zero.
    NegativeSemidefinite,
}

impl BundleClass {
    pub fn has_sections(self) -> bool {
        matches!(
            self,
            BundleClass::PositiveDefinite | BundleClass::SemidefiniteSectionful
        )
    }
}

/// The line bundle `L(Q, α)` on `R^n / Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleSpec {
    torus: TorusSpec,
    form: PolarizationForm,
    alpha: Vec<Rat>,
    class: BundleClass,
    inertia: Inertia,
}

#[derive(Serialize, Deserialize)]
struct BundleJson {
    #[serde(with = "serde_rat::vecvec")]
    lattice: Vec<Vec<Rat>>,
    #[serde(rename = "Q", with = "serde_rat::vecvec")]
    q: Vec<Vec<Rat>>,
    #[serde(with = "serde_rat::vec")]
    alpha: Vec<Rat>,
}

fn to_matrix(rows: Vec<Vec<Rat>>, what: &str) -> Result<QMatrix> {
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != c) {
        return Err(Error::Parse(format!("{what} has ragged rows")));
    }
    Ok(QMatrix::from_rows(rows))
}

impl BundleSpec {
    pub fn new(torus: TorusSpec, form: PolarizationForm, alpha: Vec<Rat>) -> Result<Self> {
        if form.dim() != torus.dim() || alpha.len() != torus.dim() {
            return Err(Error::DimensionMismatch(format!(
                "lattice {}, form {}, alpha {}",
                torus.dim(),
                form.dim(),
                alpha.len()
            )));
        }
        form.check_integral(&torus)?;
        let inertia = form.inertia();
        let class = if inertia.negative == 0 {
            if inertia.zero == 0 {
                BundleClass::PositiveDefinite
            } else if alpha_membership(&alpha, &form, &torus)?.is_member() {
                BundleClass::SemidefiniteSectionful
            } else {
                BundleClass::SemidefiniteSectionless
            }
        } else if inertia.positive == 0 {
            if inertia.zero == 0 {
                BundleClass::NegativeDefinite
            } else {
                BundleClass::NegativeSemidefinite
            }
        } else {
            BundleClass::Indefinite
        };
        Ok(BundleSpec {
            torus,
            form,
            alpha,
            class,
            inertia,
        })
    }

    /// Builds a spec from a lattice basis (columns are generators), a form and
    /// a linear form.
    pub fn from_parts(lattice: QMatrix, q: QMatrix, alpha: Vec<Rat>) -> Result<Self> {
        BundleSpec::new(TorusSpec::new(lattice)?, PolarizationForm::new(q)?, alpha)
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let j: BundleJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        BundleSpec::from_parts(
            to_matrix(j.lattice, "lattice")?,
            to_matrix(j.q, "Q")?,
            j.alpha,
        )
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        BundleSpec::from_json_value(&v)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(BundleJson {
            lattice: self.torus.basis().to_rows(),
            q: self.form.matrix().to_rows(),
            alpha: self.alpha.clone(),
        })
        .expect("serializable")
    }

    pub fn dim(&self) -> usize {
        self.torus.dim()
    }

    pub fn torus(&self) -> &TorusSpec {
        &self.torus
    }

    pub fn form(&self) -> &PolarizationForm {
        &self.form
    }

    pub fn alpha(&self) -> &[Rat] {
        &self.alpha
    }

    pub fn class(&self) -> BundleClass {
        self.class
    }

    pub fn inertia(&self) -> Inertia {
        self.inertia
    }

    pub fn membership(&self) -> AlphaMembership {
        alpha_membership(&self.alpha, &self.form, &self.torus).expect("validated on construction")
    }

    /// `L(-Q, -α)`, the bundle of `-D`.
    pub fn negate(&self) -> BundleSpec {
        BundleSpec::new(
            self.torus.clone(),
            self.form.neg(),
            self.alpha.iter().map(|a| -a).collect(),
        )
        .expect("negation preserves validity")
    }

    /// `β(λ) = α(λ) + ½ Q(λ, λ)`.
    pub fn beta(&self, lambda: &[Rat]) -> Rat {
        crate::num::dot(&self.alpha, lambda)
            + self.form.pair(lambda, lambda) / Rat::from_integer(2.into())
    }
}

pub fn classify_bundle(spec: &BundleSpec) -> BundleClass {
    spec.class()
}

/// Pull-back along translation by `r`: `L(Q, α + Q_R(·, r))`.
pub fn translate_bundle(spec: &BundleSpec, r: &[Rat]) -> Result<BundleSpec> {
    if r.len() != spec.dim() {
        return Err(Error::DimensionMismatch(format!(
            "translation has length {}, expected {}",
            r.len(),
            spec.dim()
        )));
    }
    let alpha = add_vec(&spec.alpha, &spec.form.apply(r));
    BundleSpec::new(spec.torus.clone(), spec.form.clone(), alpha)
}

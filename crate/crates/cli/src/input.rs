//! The JSON input document: a bundle plus per-command options.

use std::path::Path;

use serde::Deserialize;
use trop_theta::serde_rat;
use trop_theta::theta::BundleSpec;
use trop_theta::{Error, Rat, Result, Tropical};

/// Options shared by the subcommands; all optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// Coefficients `s_b` of `Θ = max_b {Θ_b + s_b}`, `"-inf"` allowed.
    /// Defaults to all zero.
    #[serde(default)]
    pub coefficients: Option<Vec<Tropical>>,
    /// Points for `interpolate`.
    #[serde(default, with = "opt_points")]
    pub points: Option<Vec<Vec<Rat>>>,
    /// Translation applied to the second curve by `intersect` and
    /// `self-intersect`.
    #[serde(default, with = "opt_vec")]
    pub shift: Option<Vec<Rat>>,
}

mod opt_points {
    use super::*;
    use serde::Deserializer;

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Vec<Vec<Rat>>>, D::Error> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "serde_rat::vecvec")] Vec<Vec<Rat>>);
        Ok(Option::<W>::deserialize(d)?.map(|w| w.0))
    }
}

mod opt_vec {
    use super::*;
    use serde::Deserializer;

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Vec<Rat>>, D::Error> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "serde_rat::vec")] Vec<Rat>);
        Ok(Option::<W>::deserialize(d)?.map(|w| w.0))
    }
}

#[derive(Clone, Debug)]
pub struct Input {
    pub spec: BundleSpec,
    pub options: Options,
}

impl Input {
    pub fn from_str(s: &str) -> Result<Self> {
        let mut v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let options = match v.as_object_mut().and_then(|o| o.remove("options")) {
            Some(o) => {
                serde_json::from_value(o).map_err(|e| Error::Parse(format!("options: {e}")))?
            }
            None => Options::default(),
        };
        let spec = BundleSpec::from_json_value(&v)?;
        if let Some(p) = &options.shift {
            if p.len() != spec.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "shift has length {}",
                    p.len()
                )));
            }
        }
        Ok(Input { spec, options })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Input::from_str(&s)
    }
}

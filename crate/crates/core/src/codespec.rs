//! JSON code specifications.
//!
//! ```json
//! {"construction": "B", "ell": 5, "u": 4, "v": 3,
//!  "supports": [[3,11,26],[0,16,27],[6,15,18],[14,20,24]]}
//! ```
//!
//! Which fields are required depends on `construction`. Unknown fields are
//! rejected, and parse errors carry the line and column of the problem.

use serde::{Deserialize, Serialize};

use crate::construction::{
    construct_a, construct_b, construct_bicycle, ConstructionASpec, ConstructionBSpec, QdBlockMatrix,
};
use crate::css::{build_css, CssCode};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::heuristic::{generate_supports, HeuristicConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstructionKind {
    A,
    B,
    #[serde(rename = "bicycle")]
    Bicycle,
}

/// A code specification as written in a spec file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpec {
    pub construction: Option<ConstructionKind>,
    /// Free-form label carried into simulation output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z0: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repeated_index: Option<usize>,
    /// Construction B supports. When absent, `seed` drives the support
    /// heuristic instead.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub supports: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Bicycle length.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row_weight: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_k: Option<usize>,
}

/// A built code with its block structure when it has one.
#[derive(Clone, Debug)]
pub struct BuiltCode {
    pub spec: CodeSpec,
    pub array: Option<QdBlockMatrix>,
    pub h: BitMatrix,
}

impl BuiltCode {
    /// The block size exponent, if the code is quasi-dyadic.
    pub fn ell(&self) -> Option<u32> {
        self.array.as_ref().map(QdBlockMatrix::ell)
    }

    pub fn css(&self) -> Result<CssCode> {
        build_css(&self.h)
    }

    pub fn label(&self) -> String {
        self.spec.label()
    }
}

/// Parses a spec, reporting the line and column of syntax or field errors.
pub fn parse_spec(text: &str) -> Result<CodeSpec> {
    // serde_json appends "at line L column C" to its messages.
    let spec: CodeSpec = serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
    spec.kind()?;
    Ok(spec)
}

fn required<T: Clone>(field: &Option<T>, name: &str, kind: ConstructionKind) -> Result<T> {
    field
        .clone()
        .ok_or_else(|| Error::InvalidSpec(format!("field `{name}` is required for construction {kind:?}")))
}

fn forbidden<T>(field: &Option<T>, name: &str, kind: ConstructionKind) -> Result<()> {
    match field {
        Some(_) => Err(Error::InvalidSpec(format!(
            "field `{name}` does not apply to construction {kind:?}"
        ))),
        None => Ok(()),
    }
}

impl CodeSpec {
    pub fn kind(&self) -> Result<ConstructionKind> {
        self.construction
            .ok_or_else(|| Error::InvalidSpec("field `construction` is required".into()))
    }

    pub fn label(&self) -> String {
        if let Some(name) = &self.name {
            return name.clone();
        }
        match self.construction {
            Some(ConstructionKind::A) => format!(
                "A(ell={},w={},u={})",
                self.ell.unwrap_or(0),
                self.w.unwrap_or(0),
                self.u.unwrap_or(0)
            ),
            Some(ConstructionKind::B) => format!(
                "B(ell={},u={},v={})",
                self.ell.unwrap_or(0),
                self.u.unwrap_or(0),
                self.v.unwrap_or(0)
            ),
            Some(ConstructionKind::Bicycle) => format!(
                "bicycle(n={},w={},k={})",
                self.n.unwrap_or(0),
                self.row_weight.unwrap_or(0),
                self.target_k.unwrap_or(0)
            ),
            None => "unnamed".into(),
        }
    }

    pub fn construction_a(&self) -> Result<ConstructionASpec> {
        let kind = ConstructionKind::A;
        forbidden(&self.v, "v", kind)?;
        forbidden(&self.supports, "supports", kind)?;
        forbidden(&self.n, "n", kind)?;
        forbidden(&self.row_weight, "row_weight", kind)?;
        forbidden(&self.target_k, "target_k", kind)?;
        Ok(ConstructionASpec {
            ell: required(&self.ell, "ell", kind)?,
            w: required(&self.w, "w", kind)?,
            u: required(&self.u, "u", kind)?,
            z0: required(&self.z0, "z0", kind)?,
            z: required(&self.z, "z", kind)?,
            repeated_index: self.repeated_index,
        })
    }

    pub fn construction_b(&self) -> Result<ConstructionBSpec> {
        let kind = ConstructionKind::B;
        forbidden(&self.w, "w", kind)?;
        forbidden(&self.z0, "z0", kind)?;
        forbidden(&self.z, "z", kind)?;
        forbidden(&self.repeated_index, "repeated_index", kind)?;
        forbidden(&self.n, "n", kind)?;
        forbidden(&self.row_weight, "row_weight", kind)?;
        forbidden(&self.target_k, "target_k", kind)?;
        let ell = required(&self.ell, "ell", kind)?;
        let u = required(&self.u, "u", kind)?;
        let v = required(&self.v, "v", kind)?;
        let supports = match (&self.supports, self.seed) {
            (Some(s), _) => s.clone(),
            (None, Some(seed)) => generate_supports(&HeuristicConfig::new(ell, u, v, seed))?,
            (None, None) => {
                return Err(Error::InvalidSpec(
                    "construction B needs `supports` or a `seed` for the support heuristic".into(),
                ))
            }
        };
        Ok(ConstructionBSpec { ell, u, v, supports })
    }

    pub fn build(&self) -> Result<BuiltCode> {
        let (array, h) = match self.kind()? {
            ConstructionKind::A => {
                let arr = construct_a(&self.construction_a()?)?;
                let h = arr.expand();
                (Some(arr), h)
            }
            ConstructionKind::B => {
                let arr = construct_b(&self.construction_b()?)?;
                let h = arr.expand();
                (Some(arr), h)
            }
            ConstructionKind::Bicycle => {
                let kind = ConstructionKind::Bicycle;
                forbidden(&self.ell, "ell", kind)?;
                forbidden(&self.repeated_index, "repeated_index", kind)?;
                for (field, name) in [(&self.w, "w"), (&self.u, "u"), (&self.v, "v"), (&self.z0, "z0")] {
                    forbidden(field, name, kind)?;
                }
                forbidden(&self.z, "z", kind)?;
                forbidden(&self.supports, "supports", kind)?;
                let h = construct_bicycle(
                    required(&self.n, "n", kind)?,
                    required(&self.row_weight, "row_weight", kind)?,
                    required(&self.target_k, "target_k", kind)?,
                    self.seed.unwrap_or(0),
                )?;
                (None, h)
            }
        };
        Ok(BuiltCode {
            spec: self.clone(),
            array,
            h,
        })
    }
}

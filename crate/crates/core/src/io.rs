//! JSON formats for fields, modules, morphisms and results.
//!
//! Polynomials are ascending coefficient arrays. A `K`-element is the array
//! of its `d` coordinates over `F_q`, each coordinate the array of its `e`
//! digits over `F_p`; on input a bare integer is accepted for a coordinate.
//! `F_q[T]` polynomials print as flat integer arrays when `q = p` and as
//! arrays of digit arrays otherwise.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::drinfeld::{DrinfeldError, DrinfeldModule, ModuleStructure, Morphism};
use crate::gf::{fq_from_repr, FieldCtx, FieldElement, FieldSpec, Fq, FqRepr, GfError};
use crate::ore::OrePoly;
use crate::poly::{FqPoly, PolyRing};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Drinfeld(#[from] DrinfeldError),
    #[error("malformed polynomial: {0}")]
    Poly(String),
}

pub type ElementRepr = Vec<FqRepr>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub field: FieldSpec,
    #[serde(rename = "gamma_T")]
    pub gamma_t: ElementRepr,
    #[serde(rename = "phi_T")]
    pub phi_t: Vec<ElementRepr>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub u: Vec<ElementRepr>,
}

pub fn parse_element(ctx: &FieldCtx, repr: &[FqRepr]) -> Result<FieldElement, GfError> {
    let coords = repr.iter().map(|c| fq_from_repr(ctx.fq(), c)).collect::<Result<Vec<_>, _>>()?;
    ctx.element(coords)
}

pub fn element_repr(ctx: &FieldCtx, x: &FieldElement) -> ElementRepr {
    x.coeffs()
        .iter()
        .map(|&c| FqRepr::Digits(ctx.fq().digits(c).into_iter().map(i64::from).collect()))
        .collect()
}

pub fn parse_ore(ctx: &FieldCtx, repr: &[ElementRepr]) -> Result<OrePoly, GfError> {
    let coeffs = repr.iter().map(|c| parse_element(ctx, c)).collect::<Result<Vec<_>, _>>()?;
    Ok(crate::ore::OreRing::new(ctx).from_coeffs(coeffs))
}

impl ModuleSpec {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self) -> Result<DrinfeldModule, IoError> {
        let ctx = Arc::new(FieldCtx::from_spec(&self.field)?);
        let gamma = parse_element(&ctx, &self.gamma_t)?;
        let phi_t = parse_ore(&ctx, &self.phi_t)?;
        Ok(DrinfeldModule::with_gamma(ctx, gamma, phi_t)?)
    }

    pub fn from_module(phi: &DrinfeldModule) -> Self {
        let ctx = phi.ctx();
        ModuleSpec {
            field: ctx.to_spec(),
            gamma_t: element_repr(ctx, phi.gamma()),
            phi_t: phi.phi_t().coeffs().iter().map(|c| element_repr(ctx, c)).collect(),
        }
    }
}

impl MorphismSpec {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self, phi: &DrinfeldModule) -> Result<Morphism, IoError> {
        let u = parse_ore(phi.ctx(), &self.u)?;
        Ok(Morphism::new(phi, u)?)
    }

    pub fn from_ore(ctx: &FieldCtx, u: &OrePoly) -> Self {
        MorphismSpec { u: u.coeffs().iter().map(|c| element_repr(ctx, c)).collect() }
    }
}

pub fn fq_poly_json(fq: &Fq, f: &FqPoly) -> Value {
    if fq.is_prime_field() {
        Value::from(f.coeffs().to_vec())
    } else {
        Value::from(f.coeffs().iter().map(|&c| fq.digits(c)).collect::<Vec<_>>())
    }
}

/// Accepts either shape of [`fq_poly_json`]; trailing zeros are dropped.
pub fn parse_fq_poly(fq: &Fq, v: &Value) -> Result<FqPoly, IoError> {
    let items = v.as_array().ok_or_else(|| IoError::Poly(format!("expected an array, got {v}")))?;
    let coeffs = items
        .iter()
        .map(|c| {
            let repr: FqRepr = serde_json::from_value(c.clone())
                .map_err(|_| IoError::Poly(format!("bad coefficient {c}")))?;
            Ok(fq_from_repr(fq, &repr)?)
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(PolyRing::new(fq).from_coeffs(coeffs))
}

pub fn parse_fq_poly_str(fq: &Fq, s: &str) -> Result<FqPoly, IoError> {
    parse_fq_poly(fq, &serde_json::from_str(s)?)
}

/// Factors and generators of a [`ModuleStructure`] as JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureJson {
    pub factors: Vec<Value>,
    pub generators: Vec<ElementRepr>,
}

impl StructureJson {
    pub fn new(ctx: &FieldCtx, s: &ModuleStructure) -> Self {
        StructureJson {
            factors: s.factors.iter().map(|f| fq_poly_json(ctx.fq(), f)).collect(),
            generators: s.generators.iter().map(|x| element_repr(ctx, x)).collect(),
        }
    }

    pub fn to_structure(&self, ctx: &FieldCtx) -> Result<ModuleStructure, IoError> {
        Ok(ModuleStructure {
            factors: self.factors.iter().map(|f| parse_fq_poly(ctx.fq(), f)).collect::<Result<_, _>>()?,
            generators: self.generators.iter().map(|g| parse_element(ctx, g)).collect::<Result<_, _>>()?,
        })
    }
}

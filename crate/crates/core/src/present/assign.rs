use std::collections::BTreeMap;
use std::fmt::Display;

use serde_json::json;

use super::{Certificate, PresentError, Presentation};
use crate::lgroup::{evaluate, CardinalZ, LatticeGroup};
use crate::perm::{PLMap, PermGroup};
use crate::term::{Alphabet, Generator, LTerm, Z2Element, Z2};
use crate::wreath::{FreeOracle, WreathElement, WreathProduct};

/// Images of the generators in one of the computable target ℓ-groups.
#[derive(Debug, Clone)]
pub enum Assignment {
    Z2(BTreeMap<Generator, Z2Element>),
    Cardinal {
        rank: usize,
        images: BTreeMap<Generator, Vec<i64>>,
    },
    Perm(BTreeMap<Generator, PLMap>),
    /// `F ≀ (⟨shift⟩, ℤ)` with `F` free on `base`.
    Wreath {
        base: Alphabet,
        shift: Generator,
        images: BTreeMap<Generator, WreathElement>,
    },
}

fn eval_with<G>(group: &G, images: &BTreeMap<Generator, G::Elem>, t: &LTerm) -> Result<G::Elem, PresentError>
where
    G: LatticeGroup,
    G::Error: Display,
{
    if let Some(g) = t.generators().into_iter().find(|g| !images.contains_key(g)) {
        return Err(PresentError::UnassignedGenerator(g.to_string()));
    }
    evaluate(group, t, &mut |g| Ok(images[g].clone())).map_err(|e: G::Error| PresentError::Target(e.to_string()))
}

fn identity_in<G>(group: &G, images: &BTreeMap<Generator, G::Elem>, t: &LTerm) -> Result<(bool, G::Elem), PresentError>
where
    G: LatticeGroup,
    G::Error: Display,
{
    let v = eval_with(group, images, t)?;
    let id = group.is_identity(&v).map_err(|e| PresentError::Target(e.to_string()))?;
    Ok((id, v))
}

impl Assignment {
    pub fn target_name(&self) -> &'static str {
        match self {
            Assignment::Z2(_) => "Z2",
            Assignment::Cardinal { .. } => "cardinal",
            Assignment::Perm(_) => "perm",
            Assignment::Wreath { .. } => "wreath",
        }
    }

    fn image(&self, t: &LTerm) -> Result<(bool, String), PresentError> {
        Ok(match self {
            Assignment::Z2(images) => {
                let (id, v) = identity_in(&Z2, images, t)?;
                (id, v.to_string())
            }
            Assignment::Cardinal { rank, images } => {
                let (id, v) = identity_in(&CardinalZ { rank: *rank }, images, t)?;
                (id, format!("{v:?}"))
            }
            Assignment::Perm(images) => {
                let (id, v) = identity_in(&PermGroup, images, t)?;
                (id, v.to_string())
            }
            Assignment::Wreath { base, shift, images } => {
                let w = WreathProduct::new(FreeOracle::new(base.clone()), shift.clone())
                    .map_err(|e| PresentError::Target(e.to_string()))?;
                let (id, v) = identity_in(&w, images, t)?;
                (id, v.to_string())
            }
        })
    }

    pub fn is_identity(&self, t: &LTerm) -> Result<bool, PresentError> {
        Ok(self.image(t)?.0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map = |it: Vec<(String, serde_json::Value)>| serde_json::Value::Object(it.into_iter().collect());
        match self {
            Assignment::Z2(images) => json!({
                "target": "Z2",
                "images": map(images.iter().map(|(g, v)| (g.to_string(), json!([v.m1, v.m2]))).collect()),
            }),
            Assignment::Cardinal { rank, images } => json!({
                "target": "cardinal",
                "rank": rank,
                "images": map(images.iter().map(|(g, v)| (g.to_string(), json!(v))).collect()),
            }),
            Assignment::Perm(images) => json!({
                "target": "perm",
                "images": map(images.iter().map(|(g, v)| (g.to_string(), json!(v))).collect()),
            }),
            Assignment::Wreath { base, shift, images } => json!({
                "target": "wreath",
                "base": base.to_string(),
                "shift": shift.to_string(),
                "images": map(images.iter().map(|(g, v)| (g.to_string(), v.to_json())).collect()),
            }),
        }
    }
}

/// Refutes `w = 1` by an ℓ-homomorphism into the assignment's target.
///
/// Every relator must map to the identity, otherwise the assignment does not
/// define a homomorphism and `InvalidAssignment` is returned.
pub fn hom_refute(p: &Presentation, w: &LTerm, assignment: Assignment) -> Result<Certificate, PresentError> {
    for r in &p.relators {
        if !assignment.is_identity(r)? {
            return Err(PresentError::InvalidAssignment {
                relator: r.to_string(),
            });
        }
    }
    let (id, image) = assignment.image(w)?;
    Ok(if id {
        Certificate::Unknown { budget: 1 }
    } else {
        Certificate::Refuted { assignment, image }
    })
}

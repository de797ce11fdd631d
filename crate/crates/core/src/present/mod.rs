//! Finitely presented ℓ-groups.
//!
//! `w = 1` in `⟨Y : R⟩` means `w` lies in the ℓ-ideal of the free ℓ-group
//! generated by `R`. That ideal is the set of `w` with
//! `|w| ≤ ∏ₖ hₖ⁻¹ (⋁ᵢ |rᵢ|) hₖ` for some group words `hₖ`, which the
//! [`prover`] searches for. Refutation maps the generators into a concrete
//! ℓ-group where every relator holds and `w` does not.

mod assign;
mod gdagger;
mod godel;
mod prover;

use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

pub use assign::{hom_refute, Assignment};
pub use gdagger::{gdagger_derived, gdagger_schema, schema_alphabet, Family, SchemaRelator, INNER_SHIFT, OUTER_SHIFT};
pub use godel::{pair, unpair, GodelCodec};
pub use prover::{ideal_semidecide, Proof, Prover, DEFAULT_CANDIDATE_DIAGRAMS};

use crate::perm::{random_plmap, SamplerConfig};
use crate::term::{parse, Alphabet, LTerm, TermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentError {
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("budget must be positive")]
    ZeroBudget,
    #[error("alphabet must not be empty")]
    EmptyAlphabet,
    #[error("generator {0} is not in the alphabet")]
    UnknownGenerator(String),
    #[error("generator {0} has no image")]
    UnassignedGenerator(String),
    #[error("relator {relator} does not map to the identity")]
    InvalidAssignment { relator: String },
    #[error("evaluation in the target failed: {0}")]
    Target(String),
    #[error("schema bounds must be positive")]
    EmptySchema,
    #[error("expected {expected} pairs, got {found}")]
    TooFewPairs { expected: usize, found: usize },
    #[error("generator {0} is reserved by the schema")]
    ReservedGenerator(String),
    #[error("malformed presentation: {0}")]
    Format(String),
}

/// `⟨generators : relators = 1⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Alphabet,
    pub relators: Vec<LTerm>,
}

#[derive(Serialize, Deserialize)]
struct PresentationFile {
    generators: Vec<String>,
    relators: Vec<String>,
}

impl Presentation {
    pub fn new(generators: Alphabet, relators: Vec<LTerm>) -> Result<Self, PresentError> {
        for r in &relators {
            if let Some(g) = r.generators().into_iter().find(|g| !generators.contains(g)) {
                return Err(PresentError::UnknownGenerator(g.to_string()));
            }
        }
        Ok(Presentation { generators, relators })
    }

    /// Parses relators given as term text.
    pub fn parse(generators: &str, relators: &[&str]) -> Result<Self, PresentError> {
        let alphabet = Alphabet::parse_list(generators)?;
        let relators = relators
            .iter()
            .map(|r| parse(r, &alphabet))
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(alphabet, relators)
    }

    /// Reads `{"generators": [...], "relators": ["<term>", ...]}`.
    pub fn from_json(text: &str) -> Result<Self, PresentError> {
        let file: PresentationFile =
            serde_json::from_str(text).map_err(|e| PresentError::Format(e.to_string()))?;
        let alphabet = Alphabet::new(file.generators)?;
        let relators = file
            .relators
            .iter()
            .map(|r| parse(r, &alphabet))
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(alphabet, relators)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "generators": self.generators.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "relators": self.relators.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        })
    }

    /// `⋁ᵢ |rᵢ|`, or the identity when there are no relators.
    pub fn dominator(&self) -> LTerm {
        LTerm::join(self.relators.iter().cloned().map(LTerm::abs))
    }
}

/// Outcome of a membership query for `w = 1` in a presentation.
#[derive(Debug, Clone)]
pub enum Certificate {
    /// `|w|` is bounded by a product of conjugates of the relators.
    Proved(Proof),
    /// A target in which the relators hold and `w` does not.
    Refuted { assignment: Assignment, image: String },
    /// Neither side succeeded within `budget` steps.
    Unknown { budget: u64 },
}

impl Certificate {
    pub fn is_definitive(&self) -> bool {
        !matches!(self, Certificate::Unknown { .. })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Proved(_) => "proved",
            Certificate::Refuted { .. } => "refuted",
            Certificate::Unknown { .. } => "unknown",
        }
    }

    /// Re-checks the certificate from scratch; `Unknown` is trivially valid.
    pub fn verify(&self, p: &Presentation, w: &LTerm) -> Result<bool, PresentError> {
        match self {
            Certificate::Proved(proof) => proof.verify(p, w),
            Certificate::Refuted { assignment, .. } => {
                for r in &p.relators {
                    if !assignment.is_identity(r)? {
                        return Ok(false);
                    }
                }
                Ok(!assignment.is_identity(w)?)
            }
            Certificate::Unknown { .. } => Ok(true),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Certificate::Proved(proof) => json!({
                "certificate": "proved",
                "conjugators": proof.conjugators.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
                "bound": proof.bound.to_string(),
            }),
            Certificate::Refuted { assignment, image } => json!({
                "certificate": "refuted",
                "assignment": assignment.to_json(),
                "image": image,
            }),
            Certificate::Unknown { budget } => json!({"certificate": "unknown", "budget": budget}),
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Proved(proof) => write!(f, "proved: |w| <= {}", proof.bound),
            Certificate::Refuted { assignment, image } => {
                write!(f, "refuted in {}: w maps to {image}", assignment.target_name())
            }
            Certificate::Unknown { budget } => write!(f, "unknown after {budget} steps"),
        }
    }
}

/// Random candidate targets: cardinal sums `ℤᵏ` with small entries and PL
/// maps with some generators sent to the identity.
fn random_assignment(p: &Presentation, seed: u64, index: u64) -> Assignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let gens = p.generators.generators();
    if index.is_multiple_of(2) {
        let rank = rng.gen_range(1..=3);
        let images = gens
            .iter()
            .map(|g| {
                let v = if rng.gen_ratio(1, 3) {
                    vec![0; rank]
                } else {
                    (0..rank).map(|_| rng.gen_range(-2..=2)).collect()
                };
                (g.clone(), v)
            })
            .collect();
        Assignment::Cardinal { rank, images }
    } else {
        let cfg = SamplerConfig::default();
        let images = gens
            .iter()
            .map(|g| {
                let m = if rng.gen_bool(0.5) {
                    crate::perm::PLMap::identity()
                } else {
                    random_plmap(&mut rng, &cfg)
                };
                (g.clone(), m)
            })
            .collect();
        Assignment::Perm(images)
    }
}

/// Searcher over random assignments; sample `i` is reproducible from the seed.
pub struct Refuter<'a> {
    p: &'a Presentation,
    w: &'a LTerm,
    seed: u64,
    next: u64,
}

impl<'a> Refuter<'a> {
    pub fn new(p: &'a Presentation, w: &'a LTerm, seed: u64) -> Self {
        Refuter { p, w, seed, next: 0 }
    }

    /// Tries one assignment.
    pub fn step(&mut self) -> Option<Certificate> {
        let a = random_assignment(self.p, self.seed, self.next);
        self.next += 1;
        match hom_refute(self.p, self.w, a) {
            Ok(c @ Certificate::Refuted { .. }) => Some(c),
            _ => None,
        }
    }
}

pub fn random_refute(p: &Presentation, w: &LTerm, budget: u64, seed: u64) -> Result<Certificate, PresentError> {
    if budget == 0 {
        return Err(PresentError::ZeroBudget);
    }
    let mut r = Refuter::new(p, w, seed);
    for _ in 0..budget {
        if let Some(c) = r.step() {
            return Ok(c);
        }
    }
    Ok(Certificate::Unknown { budget })
}

/// Alternates prover and refuter steps until one succeeds or `budget`
/// steps have been spent in total.
pub fn solve(p: &Presentation, w: &LTerm, budget: u64, seed: u64) -> Result<Certificate, PresentError> {
    if budget == 0 {
        return Err(PresentError::ZeroBudget);
    }
    let mut prover = Prover::new(p, w)?;
    let mut refuter = Refuter::new(p, w, seed);
    for step in 0..budget {
        let found = if step % 2 == 0 {
            prover.step().map(Certificate::Proved)
        } else {
            refuter.step()
        };
        if let Some(c) = found {
            return Ok(c);
        }
    }
    Ok(Certificate::Unknown { budget })
}

/// The meet string with index `n`.
pub fn pseudo_godel(codec: &GodelCodec, n: &BigUint) -> crate::term::MeetString {
    codec.decode(n)
}

/// One index of `s`; see [`GodelCodec::encode_padded`] for the others.
pub fn godel_index(codec: &GodelCodec, s: &crate::term::MeetString) -> Result<BigUint, PresentError> {
    codec.encode(s)
}

#[cfg(test)]
mod tests;

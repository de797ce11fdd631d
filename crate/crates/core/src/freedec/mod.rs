//! Word problem for free ℓ-groups by exhaustive construction of diagrams.
//!
//! A term is brought to join-of-meets form and every group word is traced
//! from a base point `0`, branching over all legitimate placements of each
//! new image. The term is the identity exactly when `0·w = 0` in every
//! completed diagram; any other diagram is a witness that it is not, since
//! finite partial order-isomorphisms of the line extend to automorphisms.

mod diagram;
mod search;

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

pub use diagram::{Diagram, Extension, Placement, PointId, BASE};

use crate::term::{normalize, GroupWord, JoinOfMeets, LTerm};
use search::{Engine, Problem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("diagram budget of {limit} exhausted")]
    ResourceExhausted { limit: usize },
}

/// Outcome of a word-problem query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Decision {
    EqualsIdentity,
    NotIdentity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Zero,
    Positive,
    Negative,
    Incomparable,
}

#[derive(Debug, Clone)]
pub struct DecideOptions {
    /// Upper bound on the number of diagrams created; `None` is unbounded.
    pub max_diagrams: Option<usize>,
    /// Worker threads for branch exploration.
    pub jobs: usize,
    /// Explore sequentially so that witnesses are reproducible.
    pub deterministic: bool,
    /// Skip remaining words of a row once its meet lies below the base point.
    pub prune: bool,
    /// Skip diagrams order-isomorphic to one already explored.
    pub dedupe: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            max_diagrams: Some(50_000_000),
            jobs: 1,
            deterministic: true,
            prune: true,
            dedupe: true,
        }
    }
}

/// A completed legitimate diagram in which the term moves the base point.
#[derive(Debug, Clone)]
pub struct Witness {
    pub diagram: Diagram,
    /// The traced words, in the order `w₁₁,…,w₁ᵣ₁,w₂₁,…`.
    pub words: Vec<GroupWord>,
    /// `maxᵢ minⱼ 0·wᵢⱼ`, which differs from the base point.
    pub endpoint: PointId,
}

impl Witness {
    pub fn to_json(&self) -> serde_json::Value {
        let d = &self.diagram;
        let name = |p: &PointId| Diagram::point_name(*p);
        let maps: serde_json::Map<String, serde_json::Value> = d
            .generators()
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut pairs = d.pairs(i).to_vec();
                pairs.sort_by_key(|(a, _)| d.rank(*a));
                let pairs: Vec<[String; 2]> = pairs.iter().map(|(a, b)| [name(a), name(b)]).collect();
                (g.to_string(), json!(pairs))
            })
            .collect();
        let words: Vec<serde_json::Value> = self
            .words
            .iter()
            .zip(d.trace())
            .map(|(w, p)| json!({"word": w.to_string(), "end": name(p)}))
            .collect();
        json!({
            "chain": d.chain().iter().map(name).collect::<Vec<_>>(),
            "maps": maps,
            "words": words,
            "endpoint": name(&self.endpoint),
        })
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.diagram)?;
        for (w, p) in self.words.iter().zip(self.diagram.trace()) {
            let w = if w.is_identity() { "e".to_string() } else { w.to_string() };
            writeln!(f, "0 . {w} = {}", Diagram::point_name(*p))?;
        }
        write!(f, "endpoint: {} (base 0)", Diagram::point_name(self.endpoint))
    }
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub decision: Decision,
    /// Present exactly when the decision is `NotIdentity`.
    pub witness: Option<Witness>,
    /// Number of diagrams created during the search.
    pub diagrams: usize,
}

impl Verdict {
    pub fn is_identity(&self) -> bool {
        self.decision == Decision::EqualsIdentity
    }
}

/// Decides whether `t` is the identity of the free ℓ-group on its generators.
pub fn decide(t: &LTerm) -> Result<Verdict, DecideError> {
    decide_with(t, &DecideOptions::default())
}

pub fn decide_with(t: &LTerm, opts: &DecideOptions) -> Result<Verdict, DecideError> {
    decide_normal_form(&normalize(t), opts)
}

pub fn decide_normal_form(nf: &JoinOfMeets, opts: &DecideOptions) -> Result<Verdict, DecideError> {
    let problem = Problem::new(nf);
    let engine = Engine::new(&problem, opts);
    let outcome = engine.run(opts)?;
    let witness = outcome.witness.map(|diagram| {
        let endpoint = search::endpoint(&diagram, &problem.rows, diagram.trace());
        Witness {
            diagram,
            words: nf.words().cloned().collect(),
            endpoint,
        }
    });
    Ok(Verdict {
        decision: if witness.is_some() {
            Decision::NotIdentity
        } else {
            Decision::EqualsIdentity
        },
        witness,
        diagrams: outcome.diagrams,
    })
}

/// `t ≤ 1`, i.e. `t ∨ 1 = 1`.
pub fn is_leq_identity(t: &LTerm) -> Result<bool, DecideError> {
    is_leq_identity_with(t, &DecideOptions::default())
}

///
/// A join lies below the identity iff each of its meets does, so the rows of
/// the normal form are decided one at a time.
pub fn is_leq_identity_with(t: &LTerm, opts: &DecideOptions) -> Result<bool, DecideError> {
    let nf = normalize(t);
    for row in nf.rows() {
        if row.iter().any(|w| w.is_identity()) {
            continue;
        }
        let single = JoinOfMeets::from_rows(vec![row.clone(), vec![GroupWord::identity()]]);
        if !decide_normal_form(&single, opts)?.is_identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Position of `t` relative to the identity.
pub fn sign(t: &LTerm) -> Result<Sign, DecideError> {
    sign_with(t, &DecideOptions::default())
}

pub fn sign_with(t: &LTerm, opts: &DecideOptions) -> Result<Sign, DecideError> {
    if decide_with(t, opts)?.is_identity() {
        return Ok(Sign::Zero);
    }
    if is_leq_identity_with(t, opts)? {
        return Ok(Sign::Negative);
    }
    // t ≥ 1 iff t ∧ 1 = 1
    let met = LTerm::meet([t.clone(), LTerm::Identity]);
    if decide_with(&met, opts)?.is_identity() {
        return Ok(Sign::Positive);
    }
    Ok(Sign::Incomparable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{eval_z2, parse, Alphabet, Z2Element};

    fn term(s: &str, gens: &str) -> LTerm {
        parse(s, &Alphabet::parse_list(gens).unwrap()).unwrap()
    }

    fn verdict(s: &str, gens: &str) -> Decision {
        decide(&term(s, gens)).unwrap().decision
    }

    #[test]
    fn identity_and_absolute_value() {
        assert_eq!(verdict("e", "x"), Decision::EqualsIdentity);
        assert_eq!(verdict("x \\/ x^-1", "x"), Decision::NotIdentity);
        assert_eq!(verdict("(x \\/ e) /\\ (x^-1 \\/ e)", "x"), Decision::EqualsIdentity);
        assert_eq!(verdict("comm(x, y)", "x,y"), Decision::NotIdentity);
    }

    #[test]
    fn positive_part_times_negative_part() {
        let t = term("(x \\/ e) (x /\\ e) x^-1", "x");
        assert_eq!(decide(&t).unwrap().decision, Decision::EqualsIdentity);
        assert_eq!(eval_z2(&term("(x \\/ e) (x /\\ e)", "x")).unwrap(), Z2Element::new(1, -1));
    }

    #[test]
    fn leq_identity() {
        assert!(is_leq_identity(&term("x /\\ e", "x")).unwrap());
        assert!(!is_leq_identity(&term("x", "x")).unwrap());
        assert!(is_leq_identity(&term("(x \\/ e)^-1", "x")).unwrap());
        // Several rows: every one of them must lie below the identity.
        assert!(is_leq_identity(&term("(x /\\ e) \\/ (y /\\ e) \\/ (x y /\\ x^-1 /\\ e)", "x,y")).unwrap());
        assert!(is_leq_identity(&term("(x /\\ e) \\/ (y /\\ y^-1)", "x,y")).unwrap());
        assert!(!is_leq_identity(&term("(x /\\ e) \\/ (y /\\ y^2)", "x,y")).unwrap());
        assert!(!is_leq_identity(&term("(x /\\ e) \\/ y", "x,y")).unwrap());
    }

    #[test]
    fn signs() {
        assert_eq!(sign(&term("abs(x)", "x")).unwrap(), Sign::Positive);
        assert_eq!(sign(&term("e", "x")).unwrap(), Sign::Zero);
        assert_eq!(sign(&term("x", "x")).unwrap(), Sign::Incomparable);
        assert_eq!(sign(&term("x /\\ e", "x")).unwrap(), Sign::Negative);
    }

    #[test]
    fn witness_is_a_completed_diagram() {
        let v = decide(&term("comm(x, y)", "x,y")).unwrap();
        let w = v.witness.expect("witness");
        assert!(w.diagram.is_legitimate());
        assert_ne!(w.endpoint, BASE);
        assert_eq!(w.diagram.trace().len(), w.words.len());
    }

    #[test]
    fn budget_is_reported() {
        let t = term("comm(x, y) \\/ comm(y, x) \\/ e", "x,y");
        let opts = DecideOptions {
            max_diagrams: Some(3),
            ..DecideOptions::default()
        };
        assert_eq!(
            decide_with(&t, &opts).unwrap_err(),
            DecideError::ResourceExhausted { limit: 3 }
        );
    }

    #[test]
    fn search_settings_do_not_change_verdicts() {
        let cases = [
            ("(x \\/ e) /\\ (x^-1 \\/ e)", "x"),
            ("comm(x, y)", "x,y"),
            ("x (y /\\ e) x^-1 \\/ e", "x,y"),
            ("(x y /\\ y x) (x y \\/ y x)^-1", "x,y"),
            ("(x \\/ y) (x /\\ y) (y x)^-1", "x,y"),
        ];
        for (s, gens) in cases {
            let t = term(s, gens);
            let reference = decide(&t).unwrap().decision;
            for prune in [false, true] {
                for dedupe in [false, true] {
                    for (jobs, deterministic) in [(1, true), (4, false)] {
                        let opts = DecideOptions {
                            prune,
                            dedupe,
                            jobs,
                            deterministic,
                            ..DecideOptions::default()
                        };
                        assert_eq!(decide_with(&t, &opts).unwrap().decision, reference, "{s}");
                    }
                }
            }
        }
    }
}

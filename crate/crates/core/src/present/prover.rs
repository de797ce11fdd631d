//! Search for a product of conjugates of the relators dominating `|w|`.

use num_bigint::BigUint;

use super::godel::GodelCodec;
use super::{Certificate, PresentError, Presentation};
use crate::freedec::{is_leq_identity_with, DecideError, DecideOptions};
use crate::term::{GroupWord, LTerm};

/// Diagram cap for a single candidate; candidates that exceed it are skipped.
pub const DEFAULT_CANDIDATE_DIAGRAMS: usize = 5_000_000;

/// `|w| ≤ bound` holds in the free ℓ-group, where
/// `bound = ∏ₖ hₖ⁻¹ D hₖ` and `D` is the join of the relators' absolute values.
#[derive(Debug, Clone)]
pub struct Proof {
    pub conjugators: Vec<GroupWord>,
    pub bound: LTerm,
}

fn bound(dominator: &LTerm, conjugators: &[GroupWord]) -> LTerm {
    LTerm::product(conjugators.iter().map(|h| LTerm::conj(dominator.clone(), h.to_term())))
}

fn check(w: &LTerm, bound: &LTerm, opts: &DecideOptions) -> Result<bool, DecideError> {
    let quotient = LTerm::product([LTerm::abs(w.clone()), LTerm::inv(bound.clone())]);
    is_leq_identity_with(&quotient, opts)
}

impl Proof {
    /// Rebuilds the bound from the relators and re-decides the inequality.
    pub fn verify(&self, p: &Presentation, w: &LTerm) -> Result<bool, PresentError> {
        if bound(&p.dominator(), &self.conjugators) != self.bound {
            return Ok(false);
        }
        let opts = DecideOptions::default();
        check(w, &self.bound, &opts).map_err(|e| PresentError::Target(e.to_string()))
    }
}

/// Tuples `(h₁,…,h_K)` of reduced words ordered by `K + Σ|hₖ|`, then by
/// `K`, then by the length profile, then by word rank.
struct Tuples {
    codec: GodelCodec,
    size: usize,
    pending: std::vec::IntoIter<Vec<GroupWord>>,
}

impl Tuples {
    fn new(codec: GodelCodec) -> Self {
        Tuples {
            codec,
            size: 0,
            pending: Vec::new().into_iter(),
        }
    }

    fn words(&self, len: usize) -> Vec<GroupWord> {
        let start: BigUint = (0..len).map(|l| self.codec.words_of_length(l)).sum();
        let count = self.codec.words_of_length(len);
        let mut out = Vec::new();
        let mut r = start.clone();
        while r < &start + &count {
            out.push(self.codec.word(&r));
            r += 1u32;
        }
        out
    }

    /// Compositions of `total` into `k` non-negative parts, lexicographically.
    fn compositions(total: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 1 {
            return vec![vec![total]];
        }
        (0..=total)
            .flat_map(|first| {
                Self::compositions(total - first, k - 1).into_iter().map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
            })
            .collect()
    }

    fn level(&self, size: usize) -> Vec<Vec<GroupWord>> {
        let mut out = Vec::new();
        for k in 1..=size {
            for lens in Self::compositions(size - k, k) {
                let mut tuples: Vec<Vec<GroupWord>> = vec![Vec::new()];
                for len in lens {
                    let ws = self.words(len);
                    tuples = tuples
                        .into_iter()
                        .flat_map(|t| {
                            ws.iter().map(move |w| {
                                let mut t = t.clone();
                                t.push(w.clone());
                                t
                            })
                        })
                        .collect();
                }
                out.extend(tuples);
            }
        }
        out
    }
}

impl Iterator for Tuples {
    type Item = Vec<GroupWord>;

    fn next(&mut self) -> Option<Vec<GroupWord>> {
        loop {
            if let Some(t) = self.pending.next() {
                return Some(t);
            }
            self.size += 1;
            self.pending = self.level(self.size).into_iter();
        }
    }
}

/// Resumable prover; each step tests one candidate bound.
pub struct Prover {
    w: LTerm,
    dominator: LTerm,
    tuples: Tuples,
    opts: DecideOptions,
    tried: u64,
}

impl Prover {
    pub fn new(p: &Presentation, w: &LTerm) -> Result<Self, PresentError> {
        if let Some(g) = w.generators().into_iter().find(|g| !p.generators.contains(g)) {
            return Err(PresentError::UnknownGenerator(g.to_string()));
        }
        Ok(Prover {
            w: w.clone(),
            dominator: p.dominator(),
            tuples: Tuples::new(GodelCodec::new(&p.generators)?),
            opts: DecideOptions {
                max_diagrams: Some(DEFAULT_CANDIDATE_DIAGRAMS),
                ..DecideOptions::default()
            },
            tried: 0,
        })
    }

    pub fn tried(&self) -> u64 {
        self.tried
    }

    pub fn step(&mut self) -> Option<Proof> {
        let conjugators = self.tuples.next()?;
        self.tried += 1;
        let b = bound(&self.dominator, &conjugators);
        match check(&self.w, &b, &self.opts) {
            Ok(true) => Some(Proof { conjugators, bound: b }),
            // Over budget counts as a failed candidate.
            Ok(false) | Err(DecideError::ResourceExhausted { .. }) => None,
        }
    }
}

/// Tries up to `budget` candidate bounds in order. Sound: a `Proved`
/// certificate means `w = 1` in the presented ℓ-group.
pub fn ideal_semidecide(p: &Presentation, w: &LTerm, budget: u64) -> Result<Certificate, PresentError> {
    if budget == 0 {
        return Err(PresentError::ZeroBudget);
    }
    let mut prover = Prover::new(p, w)?;
    for _ in 0..budget {
        if let Some(proof) = prover.step() {
            return Ok(Certificate::Proved(proof));
        }
    }
    Ok(Certificate::Unknown { budget })
}

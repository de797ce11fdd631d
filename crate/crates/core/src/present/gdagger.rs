//! Relator schema adjoining conjugators `s_m` to a group `G` inside
//! `G ≀ (A, ℤ lex ℤ)` with shift generators `a0` (inner) and `c1` (outer).
//!
//! For `m < m_max`, `0 < k ≤ k_max` and `0 < |j| ≤ k_max`:
//!
//! * dominated: `|s_m|ᵏ ≤ a0 * c1ᵐ`
//! * orthogonal to `G`: `s_m * c1⁻ᵐ ⊥ g * a0ʲ` for each generator `g` of `G`
//! * mutually orthogonal: `s_m * c1⁻ᵐ ⊥ s_m' * (c1⁻ᵐ' a0ʲ)`
//! * conjugacy: `u_m * (c1ᵐ s_m) = v_m * c1ᵐ`
//!
//! where `x * y = y⁻¹ x y`. Inequalities `a ≤ b` are emitted as the relator
//! `a b⁻¹ ∨ e`, orthogonality `f ⊥ g` as `|f| ∧ |g|` and equalities `a = b`
//! as `|a b⁻¹|`.

use std::fmt;

use super::PresentError;
use crate::term::{combine_relations, Alphabet, LTerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Dominated,
    OrthogonalToBase,
    MutuallyOrthogonal,
    Conjugacy,
    /// Consequence `s_m ⊥ a0 * c1ᵐ'` for `m' ≠ m`; not part of the schema.
    Derived,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Dominated => "dominated",
            Family::OrthogonalToBase => "orthogonal-to-base",
            Family::MutuallyOrthogonal => "mutually-orthogonal",
            Family::Conjugacy => "conjugacy",
            Family::Derived => "derived",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaRelator {
    pub family: Family,
    /// Instance parameters, e.g. `m=0,k=1`.
    pub label: String,
    pub relator: LTerm,
}

impl fmt::Display for SchemaRelator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]: {}", self.family, self.label, self.relator)
    }
}

pub const INNER_SHIFT: &str = "a0";
pub const OUTER_SHIFT: &str = "c1";

fn s(m: usize) -> LTerm {
    LTerm::var(&format!("s{m}"))
}

fn c1_pow(k: i64) -> LTerm {
    LTerm::pow(LTerm::var(OUTER_SHIFT), k)
}

fn a0_pow(k: i64) -> LTerm {
    LTerm::pow(LTerm::var(INNER_SHIFT), k)
}

/// Conjugation and products that leave out identity factors, so that the
/// `m = 0` instances print without `e` clutter.
fn conj(f: LTerm, g: LTerm) -> LTerm {
    if g == LTerm::Identity {
        f
    } else {
        LTerm::conj(f, g)
    }
}

fn product<const N: usize>(factors: [LTerm; N]) -> LTerm {
    LTerm::product(factors.into_iter().filter(|f| *f != LTerm::Identity))
}

fn leq(a: LTerm, b: LTerm) -> LTerm {
    LTerm::join([product([a, LTerm::inv(b)]), LTerm::Identity])
}

fn orthogonal(f: LTerm, g: LTerm) -> LTerm {
    LTerm::meet([LTerm::abs(f), LTerm::abs(g)])
}

fn equal(a: LTerm, b: LTerm) -> LTerm {
    combine_relations(&[product([a, LTerm::inv(b)])]).expect("one relation")
}

/// The full alphabet of the schema: `G`'s generators, `a0`, `c1`, then
/// `s0 … s_{m_max-1}`.
pub fn schema_alphabet(g_alphabet: &Alphabet, m_max: usize) -> Result<Alphabet, PresentError> {
    let mut names: Vec<String> = g_alphabet.generators().iter().map(|g| g.to_string()).collect();
    let extra: Vec<String> = [INNER_SHIFT.to_string(), OUTER_SHIFT.to_string()]
        .into_iter()
        .chain((0..m_max).map(|m| format!("s{m}")))
        .collect();
    for e in &extra {
        if g_alphabet.contains_name(e) {
            return Err(PresentError::ReservedGenerator(e.clone()));
        }
    }
    names.extend(extra);
    Ok(Alphabet::new(names)?)
}

/// Relators for `m < m_max` and exponents up to `k_max`, using the first
/// `m_max` strictly positive pairs `(u_m, v_m)` of `G`.
pub fn gdagger_schema(
    g_alphabet: &Alphabet,
    pairs: &[(LTerm, LTerm)],
    m_max: usize,
    k_max: usize,
) -> Result<Vec<SchemaRelator>, PresentError> {
    if m_max == 0 || k_max == 0 {
        return Err(PresentError::EmptySchema);
    }
    if pairs.len() < m_max {
        return Err(PresentError::TooFewPairs {
            expected: m_max,
            found: pairs.len(),
        });
    }
    let alphabet = schema_alphabet(g_alphabet, m_max)?;
    for (u, v) in &pairs[..m_max] {
        for g in u.generators().into_iter().chain(v.generators()) {
            if !g_alphabet.contains(&g) {
                return Err(PresentError::UnknownGenerator(g.to_string()));
            }
        }
    }
    let k_max = k_max as i64;
    let nonzero: Vec<i64> = (-k_max..=k_max).filter(|j| *j != 0).collect();
    let mut out = Vec::new();
    let mut push = |family, label: String, relator: LTerm| {
        debug_assert!(relator.is_over(&alphabet));
        out.push(SchemaRelator { family, label, relator });
    };
    for m in 0..m_max {
        let mi = m as i64;
        for k in 1..=k_max {
            push(
                Family::Dominated,
                format!("m={m},k={k}"),
                leq(LTerm::pow(LTerm::abs(s(m)), k), conj(LTerm::var(INNER_SHIFT), c1_pow(mi))),
            );
        }
        let sm = conj(s(m), c1_pow(-mi));
        for g in g_alphabet.generators() {
            for &j in &nonzero {
                push(
                    Family::OrthogonalToBase,
                    format!("m={m},g={g},k={j}"),
                    orthogonal(sm.clone(), conj(LTerm::gen(g), a0_pow(j))),
                );
            }
        }
        for m2 in 0..m_max {
            for &j in &nonzero {
                let other = conj(s(m2), product([c1_pow(-(m2 as i64)), a0_pow(j)]));
                push(
                    Family::MutuallyOrthogonal,
                    format!("m={m},m'={m2},k={j}"),
                    orthogonal(sm.clone(), other),
                );
            }
        }
        let (u, v) = &pairs[m];
        push(
            Family::Conjugacy,
            format!("m={m}"),
            equal(
                conj(u.clone(), product([c1_pow(mi), s(m)])),
                conj(v.clone(), c1_pow(mi)),
            ),
        );
    }
    Ok(out)
}

/// The consequences `s_m ⊥ a0 * c1ᵐ'` for `m < m_max`, `m' ≤ m_max`, `m' ≠ m`.
pub fn gdagger_derived(m_max: usize) -> Vec<SchemaRelator> {
    let mut out = Vec::new();
    for m in 0..m_max {
        for m2 in 0..=m_max {
            if m2 != m {
                out.push(SchemaRelator {
                    family: Family::Derived,
                    label: format!("m={m},m'={m2}"),
                    relator: orthogonal(s(m), conj(LTerm::var(INNER_SHIFT), c1_pow(m2 as i64))),
                });
            }
        }
    }
    out
}

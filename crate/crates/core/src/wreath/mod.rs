//! Cardinal sums and wreath products `G ≀ (⟨c⟩, ℤ)` over a word-problem
//! oracle for `G`.
//!
//! An element is a finitely supported base map `ℤ → G` together with a
//! power of the shift `c`. It acts on `ℤ × G` on the right by
//! `(m, x) ↦ (m + shift, x · base[m])`, which fixes the multiplication rule
//! `(a·b).base[m] = a.base[m] · b.base[m + a.shift]`. Consequently
//! `c⁻¹ (g at 0) c` is `g` at index `1`.
//!
//! An element is positive when its shift is positive, or its shift is zero
//! and every base entry is positive in `G`. Elements with different shifts
//! are therefore comparable, and equal shifts compare componentwise.

mod lex;
mod oracle;
mod route;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::json;

pub use lex::{lex_w_decide, LexPoint};
pub use oracle::{FreeOracle, GroupOracle, Memo, OracleError, Z2Oracle};
pub use route::{sum_factor, weight, WeightRoute};

use crate::freedec::Decision;
use crate::lgroup::{evaluate, LatticeGroup};
use crate::term::{Alphabet, Generator, LTerm};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WreathElement {
    /// Non-identity base entries, as unreduced terms over `G`'s alphabet.
    pub base: BTreeMap<i64, LTerm>,
    pub shift: i64,
}

impl WreathElement {
    pub fn identity() -> Self {
        WreathElement::default()
    }

    pub fn shift(k: i64) -> Self {
        WreathElement {
            base: BTreeMap::new(),
            shift: k,
        }
    }

    /// `t` placed at index `m` with trivial shift; not pruned.
    pub fn at(t: LTerm, m: i64) -> Self {
        WreathElement {
            base: BTreeMap::from([(m, t)]),
            shift: 0,
        }
    }

    pub fn entry(&self, m: i64) -> LTerm {
        self.base.get(&m).cloned().unwrap_or(LTerm::Identity)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let base: serde_json::Map<String, serde_json::Value> =
            self.base.iter().map(|(m, t)| (m.to_string(), json!(display_entry(t)))).collect();
        json!({"shift": self.shift, "base": base})
    }
}

/// Entries are kept unreduced during evaluation; print their normal form.
fn display_entry(t: &LTerm) -> String {
    crate::term::normalize(t).to_term().to_string()
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self.base.iter().map(|(m, t)| format!("{m}: {}", display_entry(t))).collect();
        write!(f, "shift {}; base {{{}}}", self.shift, entries.join(", "))
    }
}

/// Outcome of deciding a term in a wreath product, with its value.
#[derive(Debug, Clone)]
pub struct WreathVerdict {
    pub decision: Decision,
    pub value: WreathElement,
}

/// `G ≀ (⟨c⟩, ℤ)`, itself usable as an oracle for further wreathing.
pub struct WreathProduct<O> {
    inner: O,
    shift_gen: Generator,
    alphabet: Alphabet,
}

impl<O: GroupOracle> WreathProduct<O> {
    pub fn new(inner: O, shift_gen: Generator) -> Result<Self, OracleError> {
        if inner.alphabet().contains(&shift_gen) {
            return Err(OracleError::ShiftClash(shift_gen.to_string()));
        }
        let alphabet = inner.alphabet().with(shift_gen.clone());
        Ok(WreathProduct {
            inner,
            shift_gen,
            alphabet,
        })
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }

    pub fn shift_generator(&self) -> &Generator {
        &self.shift_gen
    }

    fn pruned(&self, base: BTreeMap<i64, LTerm>, shift: i64) -> Result<WreathElement, OracleError> {
        let mut kept = BTreeMap::new();
        for (m, t) in base {
            if !self.inner.is_identity(&t)? {
                kept.insert(m, t);
            }
        }
        Ok(WreathElement { base: kept, shift })
    }

    /// Value of `t`: base generators sit at index 0, the shift generator is `c`.
    pub fn eval(&self, t: &LTerm) -> Result<WreathElement, OracleError> {
        oracle::check_alphabet(&self.alphabet, t)?;
        evaluate(self, t, &mut |g| {
            Ok(if *g == self.shift_gen {
                WreathElement::shift(1)
            } else {
                WreathElement::at(LTerm::gen(g), 0)
            })
        })
    }

    /// Decides `t = 1` by evaluation.
    pub fn decide(&self, t: &LTerm) -> Result<WreathVerdict, OracleError> {
        let value = self.eval(t)?;
        let decision = if LatticeGroup::is_identity(self, &value)? {
            Decision::EqualsIdentity
        } else {
            Decision::NotIdentity
        };
        Ok(WreathVerdict { decision, value })
    }

    /// `a ≤ b`.
    pub fn leq(&self, a: &WreathElement, b: &WreathElement) -> Result<bool, OracleError> {
        let j = LatticeGroup::join(self, a, b)?;
        self.equal_elems(&j, b)
    }

    pub fn equal_elems(&self, a: &WreathElement, b: &WreathElement) -> Result<bool, OracleError> {
        let d = self.mul(a, &self.inv(b)?)?;
        LatticeGroup::is_identity(self, &d)
    }

    /// Right action on `ℤ × G`; the `G` coordinate is kept as a term.
    pub fn act(&self, point: (i64, LTerm), w: &WreathElement) -> (i64, LTerm) {
        let (m, x) = point;
        (m + w.shift, LTerm::product([x, w.entry(m)]))
    }

    fn componentwise(
        &self,
        a: &WreathElement,
        b: &WreathElement,
        op: fn([LTerm; 2]) -> LTerm,
    ) -> Result<WreathElement, OracleError> {
        let mut base = BTreeMap::new();
        for m in a.base.keys().chain(b.base.keys()) {
            base.entry(*m).or_insert_with(|| op([a.entry(*m), b.entry(*m)]));
        }
        self.pruned(base, a.shift)
    }
}

impl<O: GroupOracle> LatticeGroup for WreathProduct<O> {
    type Elem = WreathElement;
    type Error = OracleError;

    fn identity(&self) -> WreathElement {
        WreathElement::identity()
    }

    fn mul(&self, a: &WreathElement, b: &WreathElement) -> Result<WreathElement, OracleError> {
        let mut base = a.base.clone();
        for (n, t) in &b.base {
            let m = n - a.shift;
            let entry = LTerm::product([a.entry(m), t.clone()]);
            base.insert(m, entry);
        }
        self.pruned(base, a.shift + b.shift)
    }

    fn inv(&self, a: &WreathElement) -> Result<WreathElement, OracleError> {
        let base = a
            .base
            .iter()
            .map(|(m, t)| (m + a.shift, LTerm::inv(t.clone())))
            .collect();
        Ok(WreathElement {
            base,
            shift: -a.shift,
        })
    }

    fn join(&self, a: &WreathElement, b: &WreathElement) -> Result<WreathElement, OracleError> {
        match a.shift.cmp(&b.shift) {
            std::cmp::Ordering::Greater => Ok(a.clone()),
            std::cmp::Ordering::Less => Ok(b.clone()),
            std::cmp::Ordering::Equal => self.componentwise(a, b, LTerm::join),
        }
    }

    fn meet(&self, a: &WreathElement, b: &WreathElement) -> Result<WreathElement, OracleError> {
        match a.shift.cmp(&b.shift) {
            std::cmp::Ordering::Greater => Ok(b.clone()),
            std::cmp::Ordering::Less => Ok(a.clone()),
            std::cmp::Ordering::Equal => self.componentwise(a, b, LTerm::meet),
        }
    }

    fn is_identity(&self, a: &WreathElement) -> Result<bool, OracleError> {
        if a.shift != 0 {
            return Ok(false);
        }
        for t in a.base.values() {
            if !self.inner.is_identity(t)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl<O: GroupOracle> GroupOracle for WreathProduct<O> {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn is_identity(&self, t: &LTerm) -> Result<bool, OracleError> {
        let v = self.eval(t)?;
        LatticeGroup::is_identity(self, &v)
    }
}

/// Decides `t = 1` in `G ≀ (⟨c⟩, ℤ)` where `c` is `shift_gen`.
pub fn w_decide<O: GroupOracle>(t: &LTerm, oracle: O, shift_gen: &Generator) -> Result<WreathVerdict, OracleError> {
    WreathProduct::new(oracle, shift_gen.clone())?.decide(t)
}

//! Deciding wreath-product terms through weights and the cardinal
//! decomposition of the base group, without element arithmetic.

use std::collections::BTreeMap;

use super::oracle::{check_alphabet, GroupOracle, OracleError};
use crate::term::{normalize, Alphabet, Generator, GroupWord, LTerm};

/// Exponent sum of `c` in `w`.
pub fn weight(w: &GroupWord, c: &Generator) -> i64 {
    w.exponent_sum(c)
}

/// Splits `t` over a cardinal sum whose summands have the alphabets given
/// by `partition`. The factor for a summand is `t` with every other
/// summand's generators replaced by the identity; their product is `t`, and
/// `t = 1` exactly when every factor is.
pub fn sum_factor<C: Ord + Clone>(
    t: &LTerm,
    partition: &BTreeMap<Generator, C>,
) -> Result<BTreeMap<C, LTerm>, OracleError> {
    if let Some(g) = t.generators().into_iter().find(|g| !partition.contains_key(g)) {
        return Err(OracleError::UnknownGenerator(g.to_string()));
    }
    let mut out = BTreeMap::new();
    for component in partition.values() {
        if out.contains_key(component) {
            continue;
        }
        let projected = t.substitute(&mut |g| {
            if partition[g] == *component {
                LTerm::gen(g)
            } else {
                LTerm::Identity
            }
        });
        out.insert(component.clone(), normalize(&projected).to_term());
    }
    Ok(out)
}

/// Word problem for `G ≀ (⟨c⟩, ℤ)` by weight analysis.
///
/// In a meet only the words of least `c`-weight matter and in a join only
/// the rows of greatest weight, since elements of different weight are
/// comparable. If the surviving weight is zero, each surviving word is a
/// product of conjugates `cᵖ g c⁻ᵖ`, i.e. of base letters `g` at index
/// `-p`, and the base is decided summand by summand.
pub struct WeightRoute<O> {
    inner: O,
    shift_gen: Generator,
    alphabet: Alphabet,
}

impl<O: GroupOracle> WeightRoute<O> {
    pub fn new(inner: O, shift_gen: Generator) -> Result<Self, OracleError> {
        if inner.alphabet().contains(&shift_gen) {
            return Err(OracleError::ShiftClash(shift_gen.to_string()));
        }
        let alphabet = inner.alphabet().with(shift_gen.clone());
        Ok(WeightRoute {
            inner,
            shift_gen,
            alphabet,
        })
    }
}

/// Fresh names for base letters `(g, index)`.
struct BaseLetters {
    names: BTreeMap<(Generator, i64), Generator>,
    used: Alphabet,
}

impl BaseLetters {
    fn name(&mut self, g: &Generator, index: i64) -> Generator {
        if let Some(n) = self.names.get(&(g.clone(), index)) {
            return n.clone();
        }
        let n = self.used.fresh("b");
        self.used = self.used.with(n.clone());
        self.names.insert((g.clone(), index), n.clone());
        n
    }
}

impl<O: GroupOracle> GroupOracle for WeightRoute<O> {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn is_identity(&self, t: &LTerm) -> Result<bool, OracleError> {
        check_alphabet(&self.alphabet, t)?;
        let nf = normalize(t);
        let c = &self.shift_gen;
        let row_weight = |row: &Vec<GroupWord>| row.iter().map(|w| weight(w, c)).min().unwrap_or(0);
        let top = nf.rows().iter().map(row_weight).max().unwrap_or(0);
        if top != 0 {
            return Ok(false);
        }
        let mut letters = BaseLetters {
            names: BTreeMap::new(),
            used: self.alphabet.clone(),
        };
        let rows = nf.rows().iter().filter(|r| row_weight(r) == 0).map(|row| {
            let words = row.iter().filter(|w| weight(w, c) == 0).map(|w| {
                let mut prefix = 0;
                let mut factors = Vec::new();
                for (g, s) in w.unit_letters() {
                    if g == c {
                        prefix += i64::from(s);
                    } else {
                        let b = LTerm::gen(&letters.name(g, -prefix));
                        factors.push(if s > 0 { b } else { LTerm::inv(b) });
                    }
                }
                LTerm::product(factors)
            });
            LTerm::meet(words.collect::<Vec<_>>())
        });
        let base = LTerm::join(rows.collect::<Vec<_>>());
        let partition: BTreeMap<Generator, i64> =
            letters.names.iter().map(|((_, m), n)| (n.clone(), *m)).collect();
        let original: BTreeMap<Generator, Generator> =
            letters.names.iter().map(|((g, _), n)| (n.clone(), g.clone())).collect();
        if partition.is_empty() {
            return self.inner.is_identity(&base);
        }
        for factor in sum_factor(&base, &partition)?.values() {
            let in_g = factor.substitute(&mut |n| LTerm::gen(&original[n]));
            if !self.inner.is_identity(&in_g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

use std::fmt;

use super::{Generator, LTerm};

/// A freely reduced group word with packed exponents.
///
/// Adjacent letters always carry distinct generators and no exponent is
/// zero, so structural equality is equality in the free group. The derived
/// ordering is lexicographic on (generator name, exponent).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroupWord {
    letters: Vec<(Generator, i64)>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn letter(g: Generator, exp: i64) -> Self {
        let mut w = GroupWord::identity();
        w.push(g, exp);
        w
    }

    /// Builds a word from arbitrary letters, reducing freely.
    pub fn from_letters<I: IntoIterator<Item = (Generator, i64)>>(letters: I) -> Self {
        let mut w = GroupWord::identity();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    fn push(&mut self, g: Generator, exp: i64) {
        if exp == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some((last, e)) if *last == g => {
                *e += exp;
                if *e == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push((g, exp)),
        }
    }

    pub fn letters(&self) -> &[(Generator, i64)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of unit letters, i.e. the sum of absolute exponents.
    pub fn len(&self) -> usize {
        self.letters.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        for (g, e) in &other.letters {
            w.push(g.clone(), *e);
        }
        w
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|(g, e)| (g.clone(), -e)).collect(),
        }
    }

    /// The word spelled out as unit letters `(generator, ±1)`.
    pub fn unit_letters(&self) -> impl Iterator<Item = (&Generator, i8)> + '_ {
        self.letters.iter().flat_map(|(g, e)| {
            let sign = if *e > 0 { 1 } else { -1 };
            std::iter::repeat_n((g, sign), e.unsigned_abs() as usize)
        })
    }

    /// Exponent sum of `g` in the word.
    pub fn exponent_sum(&self, g: &Generator) -> i64 {
        self.letters.iter().filter(|(h, _)| h == g).map(|(_, e)| e).sum()
    }

    pub fn to_term(&self) -> LTerm {
        LTerm::product(
            self.letters
                .iter()
                .map(|(g, e)| LTerm::pow(LTerm::Gen(g.clone()), *e)),
        )
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

use std::convert::Infallible;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{LTerm, TermError};
use crate::lgroup::{evaluate, LatticeGroup};

/// Element of ℤ⊕ℤ with the cardinal order: `(m₁,m₂) ≥ 0` iff both coordinates are.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Z2Element {
    pub m1: i64,
    pub m2: i64,
}

impl Z2Element {
    pub const ZERO: Z2Element = Z2Element { m1: 0, m2: 0 };
    /// The image of the free generator.
    pub const GENERATOR: Z2Element = Z2Element { m1: 1, m2: -1 };

    pub fn new(m1: i64, m2: i64) -> Self {
        Z2Element { m1, m2 }
    }
}

impl fmt::Display for Z2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m1, self.m2)
    }
}

/// The ℓ-group ℤ⊕ℤ with componentwise operations.
#[derive(Debug, Clone, Copy, Default)]
pub struct Z2;

impl LatticeGroup for Z2 {
    type Elem = Z2Element;
    type Error = Infallible;

    fn identity(&self) -> Z2Element {
        Z2Element::ZERO
    }
    fn mul(&self, a: &Z2Element, b: &Z2Element) -> Result<Z2Element, Infallible> {
        Ok(Z2Element::new(a.m1 + b.m1, a.m2 + b.m2))
    }
    fn inv(&self, a: &Z2Element) -> Result<Z2Element, Infallible> {
        Ok(Z2Element::new(-a.m1, -a.m2))
    }
    fn join(&self, a: &Z2Element, b: &Z2Element) -> Result<Z2Element, Infallible> {
        Ok(Z2Element::new(a.m1.max(b.m1), a.m2.max(b.m2)))
    }
    fn meet(&self, a: &Z2Element, b: &Z2Element) -> Result<Z2Element, Infallible> {
        Ok(Z2Element::new(a.m1.min(b.m1), a.m2.min(b.m2)))
    }
    fn is_identity(&self, a: &Z2Element) -> Result<bool, Infallible> {
        Ok(*a == Z2Element::ZERO)
    }
}

/// Evaluates a one-generator term in the free ℓ-group on one generator,
/// realized as ℤ⊕ℤ with the generator sent to `(1,-1)`.
///
/// The result is `(0,0)` exactly when the term is the identity.
pub fn eval_z2(t: &LTerm) -> Result<Z2Element, TermError> {
    let gens = t.generators();
    if gens.len() > 1 {
        return Err(TermError::TooManyGenerators(gens.len()));
    }
    let Ok(v) = evaluate(&Z2, t, &mut |_| Ok(Z2Element::GENERATOR));
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::super::{parse, Alphabet};
    use super::*;

    fn z2(s: &str) -> Z2Element {
        eval_z2(&parse(s, &Alphabet::parse_list("x").unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn generator_and_positive_part() {
        assert_eq!(z2("x"), Z2Element::new(1, -1));
        assert_eq!(z2("x \\/ e"), Z2Element::new(1, 0));
        assert_eq!(z2("(x \\/ e) (x /\\ e)"), Z2Element::new(1, -1));
        assert_eq!(z2("(x \\/ e) /\\ (x^-1 \\/ e)"), Z2Element::ZERO);
        assert_eq!(z2("e"), Z2Element::ZERO);
    }

    #[test]
    fn rejects_two_generators() {
        let t = parse("x y", &Alphabet::parse_list("x,y").unwrap()).unwrap();
        assert_eq!(eval_z2(&t), Err(TermError::TooManyGenerators(2)));
    }
}

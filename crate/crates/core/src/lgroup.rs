//! Concrete ℓ-groups in which terms can be evaluated.

use crate::term::{Generator, LTerm};

/// An ℓ-group with computable operations and identity test.
///
/// Implementations exist for ℤ⊕ℤ, cardinal sums of copies of ℤ, the
/// piecewise-linear order-permutations of ℚ and wreath products. Operations
/// are fallible because some groups consult an external word-problem oracle.
pub trait LatticeGroup {
    type Elem: Clone;
    type Error;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, Self::Error>;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, Self::Error>;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, Self::Error>;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, Self::Error>;
    fn is_identity(&self, a: &Self::Elem) -> Result<bool, Self::Error>;
}

/// Evaluates `t` homomorphically, sending each generator through `assign`.
pub fn evaluate<G, F>(group: &G, t: &LTerm, assign: &mut F) -> Result<G::Elem, G::Error>
where
    G: LatticeGroup,
    F: FnMut(&Generator) -> Result<G::Elem, G::Error>,
{
    match t {
        LTerm::Identity => Ok(group.identity()),
        LTerm::Gen(g) => assign(g),
        LTerm::Inverse(c) => {
            let v = evaluate(group, c, assign)?;
            group.inv(&v)
        }
        LTerm::Product(cs) | LTerm::Join(cs) | LTerm::Meet(cs) => {
            let mut acc: Option<G::Elem> = None;
            for c in cs {
                let v = evaluate(group, c, assign)?;
                acc = Some(match acc {
                    None => v,
                    Some(a) => match t {
                        LTerm::Product(_) => group.mul(&a, &v)?,
                        LTerm::Join(_) => group.join(&a, &v)?,
                        _ => group.meet(&a, &v)?,
                    },
                });
            }
            Ok(acc.unwrap_or_else(|| group.identity()))
        }
    }
}

/// The cardinal sum `ℤᵏ`, ordered componentwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CardinalZ {
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("vector has {found} components, expected {expected}")]
pub struct RankMismatch {
    pub expected: usize,
    pub found: usize,
}

impl CardinalZ {
    fn zip(&self, a: &[i64], b: &[i64], f: impl Fn(i64, i64) -> i64) -> Result<Vec<i64>, RankMismatch> {
        for v in [a, b] {
            if v.len() != self.rank {
                return Err(RankMismatch {
                    expected: self.rank,
                    found: v.len(),
                });
            }
        }
        Ok(a.iter().zip(b).map(|(x, y)| f(*x, *y)).collect())
    }
}

impl LatticeGroup for CardinalZ {
    type Elem = Vec<i64>;
    type Error = RankMismatch;

    fn identity(&self) -> Vec<i64> {
        vec![0; self.rank]
    }
    fn mul(&self, a: &Vec<i64>, b: &Vec<i64>) -> Result<Vec<i64>, RankMismatch> {
        self.zip(a, b, |x, y| x + y)
    }
    fn inv(&self, a: &Vec<i64>) -> Result<Vec<i64>, RankMismatch> {
        Ok(a.iter().map(|x| -x).collect())
    }
    fn join(&self, a: &Vec<i64>, b: &Vec<i64>) -> Result<Vec<i64>, RankMismatch> {
        self.zip(a, b, i64::max)
    }
    fn meet(&self, a: &Vec<i64>, b: &Vec<i64>) -> Result<Vec<i64>, RankMismatch> {
        self.zip(a, b, i64::min)
    }
    fn is_identity(&self, a: &Vec<i64>) -> Result<bool, RankMismatch> {
        Ok(a.iter().all(|x| *x == 0))
    }
}

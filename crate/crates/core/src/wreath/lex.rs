//! The tower `G ≀ (A, ℤ lex ℤ) ≅ (G ≀ (⟨a⟩, ℤ)) ≀ (⟨c⟩, ℤ)`.

use std::cmp::Ordering;

use super::oracle::{GroupOracle, OracleError};
use super::{WreathProduct, WreathVerdict};
use crate::term::{Generator, LTerm};

/// A point of `ℤ lex ℤ`: the second coordinate dominates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LexPoint {
    pub x: i64,
    pub y: i64,
}

impl LexPoint {
    pub fn new(x: i64, y: i64) -> Self {
        LexPoint { x, y }
    }

    /// Image under `aᵏ`, which moves along the inner coordinate.
    pub fn act_a(self, k: i64) -> Self {
        LexPoint::new(self.x + k, self.y)
    }

    /// Image under `cᵏ`, which moves along the outer coordinate.
    pub fn act_c(self, k: i64) -> Self {
        LexPoint::new(self.x, self.y + k)
    }
}

impl Ord for LexPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.y.cmp(&other.y).then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for LexPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Decides `t = 1` with `a` as the inner shift and `c` as the outer one.
pub fn lex_w_decide<O: GroupOracle>(
    t: &LTerm,
    oracle: O,
    a: &Generator,
    c: &Generator,
) -> Result<WreathVerdict, OracleError> {
    let inner = WreathProduct::new(oracle, a.clone())?;
    WreathProduct::new(inner, c.clone())?.decide(t)
}

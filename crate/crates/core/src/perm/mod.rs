//! Piecewise-linear order-permutations of the rational line.
//!
//! A [`PLMap`] is an order-preserving bijection of ℚ that is affine between
//! finitely many rational breakpoints and the identity outside a bounded
//! interval. All arithmetic is exact. Maps act on the right, so the product
//! `f g` applies `f` first; [`PLMap::then`] is that composition.

mod conjugator;
mod support;
mod witness;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::convert::Infallible;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use conjugator::{BumpAnchor, Fragment, LazyConjugator, DEFAULT_ITERATION_BUDGET};
pub use support::Bump;
pub use witness::{find_witness, random_plmap, PermWitness, SamplerConfig};

use crate::lgroup::{evaluate, LatticeGroup};
use crate::term::{Generator, LTerm};

/// Exact rational number.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Q, PermError> {
    Q::from_str(s.trim()).map_err(|_| PermError::BadRational(s.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("breakpoints are not strictly increasing in both coordinates")]
    NotOrderBijection,
    #[error("first and last breakpoints must lie on the diagonal")]
    UnboundedSupport,
    #[error("map is not a strictly positive bump")]
    NotPositiveBump,
    #[error("maps have {0} and {1} bumps")]
    BumpCountMismatch(usize, usize),
    #[error("fixed-point gaps between bumps do not correspond")]
    GapMismatch,
    #[error("bump {0} moves points in opposite directions under the two maps")]
    OrientationMismatch(usize),
    #[error("anchor {0} is not inside the corresponding bump")]
    AnchorOutsideSupport(String),
    #[error("fragment must run from ({expected_from}) to ({expected_to}) monotonically")]
    MalformedFragment {
        expected_from: String,
        expected_to: String,
    },
    #[error("iteration budget of {0} steps exceeded")]
    IterationBudgetExceeded(u64),
    #[error("generator {0} has no assigned map")]
    UnassignedGenerator(String),
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
}

/// Piecewise-linear order-bijection of ℚ with bounded support.
///
/// Breakpoints are kept canonical: only points where the slope changes are
/// stored, counting the identity outside the support, so equal maps have
/// equal breakpoint lists.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PLMap {
    points: Vec<(Q, Q)>,
}

fn slope(a: &(Q, Q), b: &(Q, Q)) -> Q {
    (&b.1 - &a.1) / (&b.0 - &a.0)
}

fn fst(p: &(Q, Q)) -> &Q {
    &p.0
}

fn snd(p: &(Q, Q)) -> &Q {
    &p.1
}

impl PLMap {
    pub fn identity() -> Self {
        PLMap::default()
    }

    /// Validates and canonicalizes a breakpoint list.
    pub fn new(points: Vec<(Q, Q)>) -> Result<Self, PermError> {
        if points.windows(2).any(|w| w[0].0 >= w[1].0 || w[0].1 >= w[1].1) {
            return Err(PermError::NotOrderBijection);
        }
        if let (Some(first), Some(last)) = (points.first(), points.last()) {
            if first.0 != first.1 || last.0 != last.1 {
                return Err(PermError::UnboundedSupport);
            }
        }
        Ok(PLMap::canonical(points))
    }

    /// Convenience constructor from integer pairs; panics if invalid.
    pub fn from_ints(points: &[(i64, i64)]) -> Self {
        PLMap::new(points.iter().map(|&(x, y)| (q(x), q(y))).collect()).expect("valid PL map")
    }

    fn canonical(points: Vec<(Q, Q)>) -> Self {
        let mut out: Vec<(Q, Q)> = Vec::with_capacity(points.len());
        let one = Q::one();
        for (i, p) in points.iter().enumerate() {
            let left = match out.last() {
                Some(prev) => slope(prev, p),
                None => one.clone(),
            };
            let right = match points.get(i + 1) {
                Some(next) => slope(p, next),
                None => one.clone(),
            };
            if left != right {
                out.push(p.clone());
            }
        }
        PLMap { points: out }
    }

    pub fn breakpoints(&self) -> &[(Q, Q)] {
        &self.points
    }

    pub fn is_identity(&self) -> bool {
        self.points.is_empty()
    }

    pub fn apply(&self, x: &Q) -> Q {
        Self::eval_on(&self.points, x, fst, snd)
    }

    pub fn apply_inverse(&self, y: &Q) -> Q {
        Self::eval_on(&self.points, y, snd, fst)
    }

    fn eval_on(pts: &[(Q, Q)], x: &Q, dom: fn(&(Q, Q)) -> &Q, img: fn(&(Q, Q)) -> &Q) -> Q {
        let (Some(first), Some(last)) = (pts.first(), pts.last()) else {
            return x.clone();
        };
        if x <= dom(first) || x >= dom(last) {
            return x.clone();
        }
        // First breakpoint strictly right of x.
        let i = pts.partition_point(|p| dom(p) <= x);
        let (a, b) = (&pts[i - 1], &pts[i]);
        let (ax, ay, bx, by) = (dom(a), img(a), dom(b), img(b));
        ay + (by - ay) * (x - ax) / (bx - ax)
    }

    /// Affine pieces: for every consecutive breakpoint pair, the map is affine.
    fn xs(&self) -> impl Iterator<Item = &Q> {
        self.points.iter().map(|p| &p.0)
    }

    /// `self` followed by `other`: `x ↦ other(self(x))`.
    pub fn then(&self, other: &PLMap) -> PLMap {
        let mut xs: Vec<Q> = self.xs().cloned().collect();
        xs.extend(other.xs().map(|x| self.apply_inverse(x)));
        xs.sort();
        xs.dedup();
        let points = xs
            .into_iter()
            .map(|x| {
                let y = other.apply(&self.apply(&x));
                (x, y)
            })
            .collect();
        PLMap::canonical(points)
    }

    pub fn inverse(&self) -> PLMap {
        PLMap {
            points: self.points.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> PLMap {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(PLMap::identity(), |acc, _| acc.then(&base))
    }

    /// `g⁻¹ f g` with `f = self`; its support is the `g`-image of `f`'s.
    pub fn conjugate_by(&self, g: &PLMap) -> PLMap {
        g.inverse().then(self).then(g)
    }

    /// Pointwise maximum (`max = true`) or minimum of two maps.
    fn lattice(&self, other: &PLMap, max: bool) -> PLMap {
        let mut xs: Vec<Q> = self.xs().chain(other.xs()).cloned().collect();
        xs.sort();
        xs.dedup();
        // Both maps are affine between consecutive candidates; add crossings.
        let mut crossings = Vec::new();
        for w in xs.windows(2) {
            let d0 = self.apply(&w[0]) - other.apply(&w[0]);
            let d1 = self.apply(&w[1]) - other.apply(&w[1]);
            if (d0.is_positive() && d1.is_negative()) || (d0.is_negative() && d1.is_positive()) {
                crossings.push(&w[0] + (&w[1] - &w[0]) * &d0 / (&d0 - &d1));
            }
        }
        xs.extend(crossings);
        xs.sort();
        let points = xs
            .into_iter()
            .map(|x| {
                let (a, b) = (self.apply(&x), other.apply(&x));
                let y = match (a.cmp(&b), max) {
                    (Ordering::Less, true) | (Ordering::Greater, false) => b,
                    _ => a,
                };
                (x, y)
            })
            .collect();
        PLMap::canonical(points)
    }

    pub fn join(&self, other: &PLMap) -> PLMap {
        self.lattice(other, true)
    }

    pub fn meet(&self, other: &PLMap) -> PLMap {
        self.lattice(other, false)
    }

    /// `|f| = f ∨ f⁻¹`.
    pub fn abs(&self) -> PLMap {
        self.join(&self.inverse())
    }

    /// Pointwise `self ≤ other`.
    pub fn le(&self, other: &PLMap) -> bool {
        self.join(other) == *other
    }

    /// Closed hull `[lo, hi]` of the support, if any.
    pub fn support_hull(&self) -> Option<(Q, Q)> {
        Some((self.points.first()?.0.clone(), self.points.last()?.0.clone()))
    }
}

impl fmt::Debug for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PLMap{self}")
    }
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.points.iter().map(|(x, y)| format!("({x}, {y})")).collect();
        write!(f, "[{}]", pts.join(", "))
    }
}

impl Serialize for PLMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pts: Vec<[String; 2]> = self
            .points
            .iter()
            .map(|(x, y)| [x.to_string(), y.to_string()])
            .collect();
        pts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PLMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<[String; 2]> = Vec::deserialize(d)?;
        let points = raw
            .iter()
            .map(|[x, y]| Ok((parse_rational(x)?, parse_rational(y)?)))
            .collect::<Result<Vec<_>, PermError>>()
            .map_err(D::Error::custom)?;
        PLMap::new(points).map_err(D::Error::custom)
    }
}

/// The ℓ-group of bounded piecewise-linear order-permutations of ℚ.
#[derive(Debug, Clone, Copy, Default)]
pub struct PermGroup;

impl LatticeGroup for PermGroup {
    type Elem = PLMap;
    type Error = Infallible;

    fn identity(&self) -> PLMap {
        PLMap::identity()
    }
    fn mul(&self, a: &PLMap, b: &PLMap) -> Result<PLMap, Infallible> {
        Ok(a.then(b))
    }
    fn inv(&self, a: &PLMap) -> Result<PLMap, Infallible> {
        Ok(a.inverse())
    }
    fn join(&self, a: &PLMap, b: &PLMap) -> Result<PLMap, Infallible> {
        Ok(a.join(b))
    }
    fn meet(&self, a: &PLMap, b: &PLMap) -> Result<PLMap, Infallible> {
        Ok(a.meet(b))
    }
    fn is_identity(&self, a: &PLMap) -> Result<bool, Infallible> {
        Ok(a.is_identity())
    }
}

pub type Assignment = BTreeMap<Generator, PLMap>;

/// The automorphism denoted by `t` under `assignment`.
pub fn eval_map(t: &LTerm, assignment: &Assignment) -> Result<PLMap, PermError> {
    for g in t.generators() {
        if !assignment.contains_key(&g) {
            return Err(PermError::UnassignedGenerator(g.to_string()));
        }
    }
    evaluate(&PermGroup, t, &mut |g| Ok::<_, Infallible>(assignment[g].clone()))
        .map_err(|e| match e {})
}

/// Image of `x` under the automorphism denoted by `t`.
pub fn eval_term(t: &LTerm, assignment: &Assignment, x: &Q) -> Result<Q, PermError> {
    Ok(eval_map(t, assignment)?.apply(x))
}

impl PartialOrd for PLMap {
    /// The pointwise partial order.
    fn partial_cmp(&self, other: &PLMap) -> Option<Ordering> {
        match (self.le(other), other.le(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

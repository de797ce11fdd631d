use num_traits::Zero;

use super::{PLMap, Q};

/// One maximal open interval of moved points, with the map restricted to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bump {
    pub lo: Q,
    pub hi: Q,
    /// Points inside are moved upwards.
    pub positive: bool,
    /// The map on `(lo, hi)`, extended by the identity elsewhere.
    pub restriction: PLMap,
}

impl Bump {
    pub fn contains(&self, x: &Q) -> bool {
        &self.lo < x && x < &self.hi
    }
}

impl PLMap {
    /// Maximal open intervals of moved points, in ascending order.
    pub fn supports(&self) -> Vec<Bump> {
        let pts = self.breakpoints();
        // Every fixed point either is a breakpoint or lies where an affine
        // piece crosses the diagonal.
        let mut xs: Vec<Q> = Vec::new();
        for w in pts.windows(2) {
            xs.push(w[0].0.clone());
            let d0 = &w[0].1 - &w[0].0;
            let d1 = &w[1].1 - &w[1].0;
            if !d0.is_zero() && !d1.is_zero() && (d0 > Q::zero()) != (d1 > Q::zero()) {
                xs.push(&w[0].0 + (&w[1].0 - &w[0].0) * &d0 / (&d0 - &d1));
            }
        }
        xs.extend(pts.last().map(|p| p.0.clone()));

        let mut bumps: Vec<Bump> = Vec::new();
        let mut open: Option<(Q, bool)> = None;
        for w in xs.windows(2) {
            let mid = (&w[0] + &w[1]) / Q::from_integer(2.into());
            let moved = self.apply(&mid) - &mid;
            let left_fixed = self.apply(&w[0]) == w[0];
            if left_fixed {
                if let Some((lo, positive)) = open.take() {
                    bumps.push(self.bump(lo, w[0].clone(), positive));
                }
            }
            if !moved.is_zero() && open.is_none() {
                open = Some((w[0].clone(), moved > Q::zero()));
            }
        }
        if let (Some((lo, positive)), Some(hi)) = (open, xs.last()) {
            bumps.push(self.bump(lo, hi.clone(), positive));
        }
        bumps
    }

    fn bump(&self, lo: Q, hi: Q, positive: bool) -> Bump {
        let mut points = vec![(lo.clone(), lo.clone())];
        points.extend(
            self.breakpoints()
                .iter()
                .filter(|(x, _)| &lo < x && x < &hi)
                .cloned(),
        );
        points.push((hi.clone(), hi.clone()));
        let restriction = PLMap::new(points).expect("restriction of an order-bijection");
        Bump {
            lo,
            hi,
            positive,
            restriction,
        }
    }

    /// Whether the open supports of the two maps are disjoint.
    pub fn is_orthogonal(&self, other: &PLMap) -> bool {
        let (a, b) = (self.supports(), other.supports());
        a.iter().all(|s| b.iter().all(|t| s.hi <= t.lo || t.hi <= s.lo))
    }
}

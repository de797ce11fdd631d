//! A conjugating map `h` with `h⁻¹ f h = g`, evaluated lazily.
//!
//! On each bump of `f` the map is determined by a fundamental domain
//! `[α, αf]` and a fragment `h₀` onto `[β, βg]`: a point `x` with
//! `αfᵐ ≤ x < αfᵐ⁺¹` goes to `x f⁻ᵐ h₀ gᵐ`. Fixed points of `f` are sent
//! affinely onto fixed points of `g`.

use super::{Bump, PLMap, PermError, Q};

pub const DEFAULT_ITERATION_BUDGET: u64 = 1_000_000;

/// Increasing piecewise-linear bijection between two closed intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragment {
    points: Vec<(Q, Q)>,
}

impl Fragment {
    pub fn new(points: Vec<(Q, Q)>) -> Result<Self, PermError> {
        let monotone = points.len() >= 2
            && points.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1);
        if !monotone {
            return Err(PermError::MalformedFragment {
                expected_from: "a".into(),
                expected_to: "b > a".into(),
            });
        }
        Ok(Fragment { points })
    }

    /// The affine bijection `[x0, x1] → [y0, y1]`.
    pub fn affine(x0: Q, x1: Q, y0: Q, y1: Q) -> Result<Self, PermError> {
        Fragment::new(vec![(x0, y0), (x1, y1)])
    }

    pub fn points(&self) -> &[(Q, Q)] {
        &self.points
    }

    pub fn start(&self) -> &(Q, Q) {
        &self.points[0]
    }

    pub fn end(&self) -> &(Q, Q) {
        self.points.last().expect("non-empty")
    }

    /// Value at `x`, extending the end pieces affinely.
    pub fn apply(&self, x: &Q) -> Q {
        let i = self.points.partition_point(|p| &p.0 <= x).clamp(1, self.points.len() - 1);
        let (a, b) = (&self.points[i - 1], &self.points[i]);
        &a.1 + (&b.1 - &a.1) * (x - &a.0) / (&b.0 - &a.0)
    }
}

/// Fundamental-domain data for one bump of `f` and its partner bump of `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BumpAnchor {
    pub alpha: Q,
    pub beta: Q,
    /// Defaults to the affine bijection between the fundamental domains.
    pub h0: Option<Fragment>,
}

#[derive(Debug, Clone)]
struct Piece {
    lo: Q,
    hi: Q,
    /// Restriction of `f` or `f⁻¹` to the bump, whichever moves points up.
    f_up: PLMap,
    g_up: PLMap,
    alpha: Q,
    alpha_next: Q,
    h0: Fragment,
}

/// `h` with `h⁻¹ f h = g` for maps with corresponding bump structure.
#[derive(Debug, Clone)]
pub struct LazyConjugator {
    f: PLMap,
    g: PLMap,
    pieces: Vec<Piece>,
    /// Bump endpoints of `f` paired with those of `g`.
    fixed: Vec<(Q, Q)>,
    budget: u64,
}

fn upward(b: &Bump) -> PLMap {
    if b.positive {
        b.restriction.clone()
    } else {
        b.restriction.inverse()
    }
}

impl LazyConjugator {
    /// Conjugator between two single positive bumps with anchors `α`, `β`.
    pub fn new(f: &PLMap, g: &PLMap, alpha: Q, beta: Q, h0: Option<Fragment>) -> Result<Self, PermError> {
        for m in [f, g] {
            let s = m.supports();
            if s.len() != 1 || !s[0].positive {
                return Err(PermError::NotPositiveBump);
            }
        }
        LazyConjugator::with_anchors(f, g, vec![BumpAnchor { alpha, beta, h0 }])
    }

    /// Conjugator pairing the bumps of `f` and `g` in order, anchored at
    /// bump midpoints with affine fragments.
    pub fn matching(f: &PLMap, g: &PLMap) -> Result<Self, PermError> {
        let (fs, gs) = (f.supports(), g.supports());
        if fs.len() != gs.len() {
            return Err(PermError::BumpCountMismatch(fs.len(), gs.len()));
        }
        let two = Q::from_integer(2.into());
        let anchors = fs
            .iter()
            .zip(&gs)
            .map(|(a, b)| BumpAnchor {
                alpha: (&a.lo + &a.hi) / &two,
                beta: (&b.lo + &b.hi) / &two,
                h0: None,
            })
            .collect();
        LazyConjugator::with_anchors(f, g, anchors)
    }

    pub fn with_anchors(f: &PLMap, g: &PLMap, anchors: Vec<BumpAnchor>) -> Result<Self, PermError> {
        let (fs, gs) = (f.supports(), g.supports());
        if fs.len() != gs.len() {
            return Err(PermError::BumpCountMismatch(fs.len(), gs.len()));
        }
        if anchors.len() != fs.len() {
            return Err(PermError::BumpCountMismatch(fs.len(), anchors.len()));
        }
        for i in 1..fs.len() {
            if (fs[i - 1].hi == fs[i].lo) != (gs[i - 1].hi == gs[i].lo) {
                return Err(PermError::GapMismatch);
            }
        }
        let mut pieces = Vec::with_capacity(fs.len());
        let mut fixed: Vec<(Q, Q)> = Vec::new();
        for (i, ((fb, gb), anchor)) in fs.iter().zip(&gs).zip(anchors).enumerate() {
            if fb.positive != gb.positive {
                return Err(PermError::OrientationMismatch(i));
            }
            if !fb.contains(&anchor.alpha) {
                return Err(PermError::AnchorOutsideSupport(anchor.alpha.to_string()));
            }
            if !gb.contains(&anchor.beta) {
                return Err(PermError::AnchorOutsideSupport(anchor.beta.to_string()));
            }
            let (f_up, g_up) = (upward(fb), upward(gb));
            let alpha_next = f_up.apply(&anchor.alpha);
            let beta_next = g_up.apply(&anchor.beta);
            let h0 = match anchor.h0 {
                Some(h0) => h0,
                None => Fragment::affine(
                    anchor.alpha.clone(),
                    alpha_next.clone(),
                    anchor.beta.clone(),
                    beta_next.clone(),
                )?,
            };
            if *h0.start() != (anchor.alpha.clone(), anchor.beta.clone())
                || *h0.end() != (alpha_next.clone(), beta_next.clone())
            {
                return Err(PermError::MalformedFragment {
                    expected_from: format!("{}, {}", anchor.alpha, anchor.beta),
                    expected_to: format!("{alpha_next}, {beta_next}"),
                });
            }
            for pair in [(fb.lo.clone(), gb.lo.clone()), (fb.hi.clone(), gb.hi.clone())] {
                if fixed.last() != Some(&pair) {
                    fixed.push(pair);
                }
            }
            pieces.push(Piece {
                lo: fb.lo.clone(),
                hi: fb.hi.clone(),
                f_up,
                g_up,
                alpha: anchor.alpha,
                alpha_next,
                h0,
            });
        }
        Ok(LazyConjugator {
            f: f.clone(),
            g: g.clone(),
            pieces,
            fixed,
            budget: DEFAULT_ITERATION_BUDGET,
        })
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn f(&self) -> &PLMap {
        &self.f
    }

    pub fn g(&self) -> &PLMap {
        &self.g
    }

    /// Image of `x` under the conjugator.
    pub fn apply(&self, x: &Q) -> Result<Q, PermError> {
        match self.pieces.iter().find(|p| &p.lo < x && x < &p.hi) {
            Some(piece) => self.apply_in(piece, x),
            None => Ok(self.apply_outside(x)),
        }
    }

    fn apply_in(&self, p: &Piece, x: &Q) -> Result<Q, PermError> {
        let mut steps: u64 = 0;
        let mut tick = || {
            steps += 1;
            if steps > self.budget {
                Err(PermError::IterationBudgetExceeded(self.budget))
            } else {
                Ok(())
            }
        };
        // Pull x back into [α, αf), counting the powers of f used.
        let mut y = x.clone();
        let mut m: i64 = 0;
        while y >= p.alpha_next {
            tick()?;
            y = p.f_up.apply_inverse(&y);
            m += 1;
        }
        while y < p.alpha {
            tick()?;
            y = p.f_up.apply(&y);
            m -= 1;
        }
        let mut z = p.h0.apply(&y);
        for _ in 0..m.unsigned_abs() {
            tick()?;
            z = if m > 0 {
                p.g_up.apply(&z)
            } else {
                p.g_up.apply_inverse(&z)
            };
        }
        Ok(z)
    }

    /// Affine interpolation through the paired fixed points, translation
    /// beyond them.
    fn apply_outside(&self, x: &Q) -> Q {
        let pts = &self.fixed;
        let (Some(first), Some(last)) = (pts.first(), pts.last()) else {
            return x.clone();
        };
        if x <= &first.0 {
            return x - &first.0 + &first.1;
        }
        if x >= &last.0 {
            return x - &last.0 + &last.1;
        }
        let i = pts.partition_point(|p| &p.0 <= x);
        let (a, b) = (&pts[i - 1], &pts[i]);
        &a.1 + (&b.1 - &a.1) * (x - &a.0) / (&b.0 - &a.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{q, ratio};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f() -> PLMap {
        PLMap::from_ints(&[(0, 0), (1, 2), (4, 4)])
    }

    fn g() -> PLMap {
        PLMap::from_ints(&[(10, 10), (11, 12), (14, 14)])
    }

    fn fixture() -> LazyConjugator {
        LazyConjugator::new(&f(), &g(), q(1), q(11), None).unwrap()
    }

    fn check_conjugation(h: &LazyConjugator, xs: impl IntoIterator<Item = Q>) {
        for x in xs {
            let lhs = h.g().apply(&h.apply(&x).unwrap());
            let rhs = h.apply(&h.f().apply(&x)).unwrap();
            assert_eq!(lhs, rhs, "at {x}");
        }
    }

    #[test]
    fn anchor_and_fundamental_domain_endpoints() {
        let h = fixture();
        assert_eq!(h.apply(&q(1)).unwrap(), q(11));
        assert_eq!(h.apply(&q(2)).unwrap(), q(12));
        // f(2) = 8/3 lies two steps up; g(12) = 38/3.
        assert_eq!(f().apply(&q(2)), ratio(8, 3));
        assert_eq!(h.apply(&ratio(8, 3)).unwrap(), g().apply(&q(12)));
        assert_eq!(h.apply(&ratio(8, 3)).unwrap(), ratio(38, 3));
    }

    #[test]
    fn conjugation_identity_at_random_points() {
        let h = fixture();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let xs: Vec<Q> = (0..1000).map(|_| ratio(rng.gen_range(1..4000), 1000)).collect();
        check_conjugation(&h, xs);
        // Outside the support the map is an order-bijection onto Fix(g).
        check_conjugation(&h, (-20..20).map(|i| ratio(i * 7, 3)));
        assert_eq!(h.apply(&q(0)).unwrap(), q(10));
        assert_eq!(h.apply(&q(-1)).unwrap(), q(9));
        assert_eq!(h.apply(&q(5)).unwrap(), q(15));
    }

    #[test]
    fn conjugator_is_monotone() {
        let h = fixture();
        let xs: Vec<Q> = (-40..200).map(|i| ratio(i, 37)).collect();
        let ys: Vec<Q> = xs.iter().map(|x| h.apply(x).unwrap()).collect();
        assert!(ys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn custom_fragment() {
        let h0 = Fragment::new(vec![(q(1), q(11)), (ratio(3, 2), ratio(23, 2) + ratio(1, 4)), (q(2), q(12))]).unwrap();
        let h = LazyConjugator::new(&f(), &g(), q(1), q(11), Some(h0)).unwrap();
        check_conjugation(&h, (1..400).map(|i| ratio(i, 100)));
        let bad = Fragment::affine(q(1), q(3), q(11), q(12)).unwrap();
        assert!(matches!(
            LazyConjugator::new(&f(), &g(), q(1), q(11), Some(bad)),
            Err(PermError::MalformedFragment { .. })
        ));
    }

    #[test]
    fn preconditions() {
        assert_eq!(
            LazyConjugator::new(&f().inverse(), &g(), q(1), q(11), None).unwrap_err(),
            PermError::NotPositiveBump
        );
        assert_eq!(
            LazyConjugator::new(&f(), &g(), q(5), q(11), None).unwrap_err(),
            PermError::AnchorOutsideSupport("5".into())
        );
        let two = f().then(&g());
        assert_eq!(
            LazyConjugator::matching(&two, &g()).unwrap_err(),
            PermError::BumpCountMismatch(2, 1)
        );
        assert_eq!(
            LazyConjugator::matching(&f().then(&g().inverse()), &two).unwrap_err(),
            PermError::OrientationMismatch(1)
        );
        // Adjacent bumps against separated bumps.
        let touching = PLMap::from_ints(&[(0, 0), (1, 2), (3, 3), (4, 6), (8, 8)]);
        assert_eq!(
            LazyConjugator::matching(&touching, &two).unwrap_err(),
            PermError::GapMismatch
        );
    }

    #[test]
    fn budget_is_explicit() {
        let h = fixture().with_budget(3);
        assert!(h.apply(&ratio(3, 2)).is_ok());
        // Deep in the left tail: f halves distances to 0, so about ten steps.
        assert_eq!(
            h.apply(&ratio(1, 1000)).unwrap_err(),
            PermError::IterationBudgetExceeded(3)
        );
        assert!(fixture().apply(&ratio(1, 1000)).is_ok());
    }

    #[test]
    fn several_bumps_of_mixed_sign() {
        let f = PLMap::from_ints(&[(0, 0), (1, 2), (4, 4), (6, 5), (9, 9)]);
        let g = PLMap::from_ints(&[(-3, -3), (-2, 0), (2, 2), (20, 15), (30, 30)]);
        let h = LazyConjugator::matching(&f, &g).unwrap();
        check_conjugation(&h, (-50..500).map(|i| ratio(i, 47)));
        let conj = |x: &Q| h.apply(x).unwrap();
        assert_eq!(conj(&q(0)), q(-3));
        assert_eq!(conj(&q(4)), q(2));
        assert_eq!(conj(&q(9)), q(30));
    }
}

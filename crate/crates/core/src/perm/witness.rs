//! Random PL assignments as a sound refuter for `t = 1`.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::{eval_map, Assignment, PLMap, Q};
use crate::term::LTerm;

/// Shape of the random maps: supports lie in `[lo, hi]` and coordinates are
/// multiples of `1/denominator`.
#[derive(Debug, Clone)]
pub struct SamplerConfig {
    pub lo: i64,
    pub hi: i64,
    pub denominator: i64,
    pub max_interior: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            lo: 0,
            hi: 16,
            denominator: 4,
            max_interior: 5,
        }
    }
}

/// A random non-identity map: a random sub-interval of the grid with
/// between one and `max_interior` interior breakpoints.
pub fn random_plmap<R: Rng + ?Sized>(rng: &mut R, cfg: &SamplerConfig) -> PLMap {
    let d = cfg.denominator.max(1);
    let cells = ((cfg.hi - cfg.lo) * d).max(2);
    let grid = |k: i64| Q::new((cfg.lo * d + k).into(), d.into());
    loop {
        let a = rng.gen_range(0..cells - 1);
        let b = rng.gen_range(a + 2..=cells);
        let room = (b - a - 1) as usize;
        let k = rng.gen_range(1..=cfg.max_interior.max(1)).min(room);
        let mut xs: Vec<i64> = sample(rng, room, k).into_iter().map(|i| a + 1 + i as i64).collect();
        let mut ys: Vec<i64> = sample(rng, room, k).into_iter().map(|i| a + 1 + i as i64).collect();
        xs.sort_unstable();
        ys.sort_unstable();
        let mut points = vec![(grid(a), grid(a))];
        points.extend(xs.into_iter().zip(ys).map(|(x, y)| (grid(x), grid(y))));
        points.push((grid(b), grid(b)));
        if let Ok(map) = PLMap::new(points) {
            if !map.is_identity() {
                return map;
            }
        }
    }
}

/// An assignment under which the term moves `point`.
#[derive(Debug, Clone)]
pub struct PermWitness {
    pub assignment: Assignment,
    pub point: Q,
    pub image: Q,
    /// Index of the sample that produced the witness.
    pub sample: u64,
}

impl PermWitness {
    pub fn to_json(&self) -> serde_json::Value {
        let maps: serde_json::Map<String, serde_json::Value> = self
            .assignment
            .iter()
            .map(|(g, m)| (g.to_string(), serde_json::to_value(m).expect("serializable")))
            .collect();
        json!({
            "assignment": maps,
            "point": self.point.to_string(),
            "image": self.image.to_string(),
            "sample": self.sample,
        })
    }
}

fn try_sample(t: &LTerm, seed: u64, index: u64, cfg: &SamplerConfig) -> Option<PermWitness> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let assignment: Assignment = t
        .generators()
        .into_iter()
        .map(|g| {
            let m = random_plmap(&mut rng, cfg);
            (g, m)
        })
        .collect();
    let map = eval_map(t, &assignment).ok()?;
    let bump = map.supports().into_iter().next()?;
    let point = (&bump.lo + &bump.hi) / Q::from_integer(2.into());
    let image = map.apply(&point);
    Some(PermWitness {
        assignment,
        point,
        image,
        sample: index,
    })
}

/// Tries `budget` random assignments. Sample `i` draws from stream `i` of a
/// generator seeded with `seed`, and the lowest successful index is
/// returned, so the result does not depend on scheduling.
pub fn find_witness(t: &LTerm, budget: u64, seed: u64) -> Option<PermWitness> {
    find_witness_with(t, budget, seed, &SamplerConfig::default())
}

pub fn find_witness_with(t: &LTerm, budget: u64, seed: u64, cfg: &SamplerConfig) -> Option<PermWitness> {
    (0..budget)
        .into_par_iter()
        .find_map_first(|i| try_sample(t, seed, i, cfg))
}

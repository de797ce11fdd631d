//! Term enumeration and seeded random terms for property checks.

use rand::Rng;

use crate::term::{Generator, LTerm};

/// Every term with at most `max_nodes` nodes built from the identity, the
/// given generators, inverse and binary product, join and meet.
///
/// Terms are built through the flattening constructors, so distinct binary
/// trees may coincide; duplicates are kept.
pub fn enumerate_terms(gens: &[Generator], max_nodes: usize) -> Vec<LTerm> {
    // by_size[n] holds every tree with exactly n nodes.
    let mut by_size: Vec<Vec<LTerm>> = vec![Vec::new(); max_nodes + 1];
    if max_nodes == 0 {
        return Vec::new();
    }
    by_size[1].push(LTerm::Identity);
    by_size[1].extend(gens.iter().map(LTerm::gen));
    for n in 2..=max_nodes {
        let mut level: Vec<LTerm> = by_size[n - 1].iter().cloned().map(LTerm::inv).collect();
        for left in 1..n - 1 {
            let right = n - 1 - left;
            for a in &by_size[left] {
                for b in &by_size[right] {
                    level.push(LTerm::product([a.clone(), b.clone()]));
                    level.push(LTerm::join([a.clone(), b.clone()]));
                    level.push(LTerm::meet([a.clone(), b.clone()]));
                }
            }
        }
        by_size[n] = level;
    }
    by_size.into_iter().flatten().collect()
}

/// A random binary term with at most `max_nodes` nodes.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, gens: &[Generator], max_nodes: usize) -> LTerm {
    let budget = rng.gen_range(1..=max_nodes.max(1));
    random_sized(rng, gens, budget)
}

fn random_sized<R: Rng + ?Sized>(rng: &mut R, gens: &[Generator], nodes: usize) -> LTerm {
    if nodes <= 1 {
        // Generators are favoured over the identity leaf.
        let k = rng.gen_range(0..=gens.len() * 3);
        return if k < gens.len() * 3 {
            LTerm::gen(&gens[k % gens.len()])
        } else {
            LTerm::Identity
        };
    }
    if nodes == 2 || rng.gen_ratio(1, 5) {
        return LTerm::inv(random_sized(rng, gens, nodes - 1));
    }
    let left = rng.gen_range(1..nodes - 1);
    let a = random_sized(rng, gens, left);
    let b = random_sized(rng, gens, nodes - 1 - left);
    match rng.gen_range(0..3) {
        0 => LTerm::product([a, b]),
        1 => LTerm::join([a, b]),
        _ => LTerm::meet([a, b]),
    }
}

/// A random group word term of `letters` unit letters over `gens`.
pub fn random_word_term<R: Rng + ?Sized>(rng: &mut R, gens: &[Generator], letters: usize) -> LTerm {
    LTerm::product((0..letters).map(|_| {
        let g = LTerm::gen(&gens[rng.gen_range(0..gens.len())]);
        if rng.gen_bool(0.5) {
            g
        } else {
            LTerm::inv(g)
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn enumeration_counts() {
        let x = vec![Generator::new("x").unwrap()];
        // T(1)=2, T(n)=T(n-1)+3·Σ T(a)T(n-1-a)
        assert_eq!(enumerate_terms(&x, 1).len(), 2);
        assert_eq!(enumerate_terms(&x, 3).len(), 2 + 2 + 14);
        assert_eq!(enumerate_terms(&x, 5).len(), 2 + 2 + 14 + 38 + 218);
    }

    #[test]
    fn random_terms_respect_size() {
        let gens = vec![Generator::new("x").unwrap(), Generator::new("y").unwrap()];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let t = random_term(&mut rng, &gens, 8);
            assert!(t.node_count() <= 8, "{t}");
        }
    }
}
